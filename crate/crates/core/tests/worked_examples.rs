mod common;

use common::{c5, s5, tail_heavy_path};
use qsched::{
    makespan, qubit_completions, schedule_bruteforce, schedule_exact, schedule_greedy, schedule_layered,
    star_exact_time, star_greedy_time, star_layered_time, validate_schedule, ExactOptions, ExactStatus, GateId,
    TIME_TOLERANCE,
};

fn ids(v: &[usize]) -> Vec<GateId> {
    v.iter().map(|&g| GateId(g)).collect()
}

#[test]
fn c5_circuit_shape() {
    let c = c5();
    assert_eq!(c.gates.len(), 10);
    assert_eq!(c.precedence.len(), 10);
    assert!(c.validate().ok);
}

#[test]
fn c5_layered() {
    // gate ids: 0=(0,1) 1=(1,2) 2=(2,3) 3=(3,4) 4=(0,4), 5..9 single-qubit
    let l = schedule_layered(&c5()).unwrap();
    assert_eq!(l.layers, vec![ids(&[0, 2]), ids(&[1, 3]), ids(&[4]), ids(&[5, 6, 7, 8, 9])]);
    assert_eq!(l.layer_times, vec![5.0, 4.0, 1.0, 1.0]);
    assert_eq!(l.makespan(), 11.0);
    assert_eq!(makespan(&c5(), &l.schedule).unwrap(), 11.0);
}

#[test]
fn c5_greedy_walkthrough() {
    let c = c5();
    let s = schedule_greedy(&c).unwrap();
    for (gate, start) in [(0, 0.0), (3, 0.0), (2, 2.0), (4, 5.0), (1, 5.0)] {
        assert_eq!(s.starts[&GateId(gate)], start, "gate {gate}");
    }
    assert_eq!(qubit_completions(&c, &s).unwrap(), vec![7.0, 10.0, 10.0, 6.0, 7.0]);
    assert_eq!(makespan(&c, &s).unwrap(), 10.0);
    assert!(validate_schedule(&c, &s, TIME_TOLERANCE).unwrap().ok);
}

#[test]
fn c5_exact_and_bruteforce() {
    let c = c5();
    let r = schedule_exact(&c, &ExactOptions::default()).unwrap();
    assert_eq!(r.status, ExactStatus::Optimal);
    assert!((r.makespan - 10.0).abs() < 1e-9);
    let b = schedule_bruteforce(&c).unwrap();
    assert!((makespan(&c, &b).unwrap() - 10.0).abs() < 1e-9);
}

#[test]
fn s5_all_schedulers() {
    let s = s5();
    let c = s.to_circuit();
    let greedy = makespan(&c, &schedule_greedy(&c).unwrap()).unwrap();
    assert!((greedy - 5.0).abs() < 1e-9);
    let exact = schedule_exact(&c, &ExactOptions::default()).unwrap();
    assert!(exact.status.is_optimal());
    assert!((exact.makespan - 3.02).abs() < 1e-9);
    assert!((schedule_layered(&c).unwrap().makespan() - 5.0).abs() < 1e-9);

    assert!((star_layered_time(&s) - 5.0).abs() < 1e-9);
    assert!((star_greedy_time(&s, &s.duration_descending()).unwrap().makespan - 5.0).abs() < 1e-9);
    assert!((star_exact_time(&s).makespan - 3.02).abs() < 1e-9);
    let saving = (greedy - exact.makespan) / greedy;
    assert!((saving - 0.396).abs() < 1e-9);
}

#[test]
fn tail_heavy_path_orders_long_tail_first() {
    // frozen from schedule_bruteforce: only putting (0,1) first lets the
    // 5.0 single-qubit gate start at t = 1
    let c = tail_heavy_path();
    let b = schedule_bruteforce(&c).unwrap();
    assert!((makespan(&c, &b).unwrap() - 6.0).abs() < 1e-12);
    assert_eq!(b.starts[&GateId(0)], 0.0);
    let r = schedule_exact(&c, &ExactOptions::default()).unwrap();
    assert!((r.makespan - 6.0).abs() < 1e-9);
    assert!(r.orderings[&(GateId(0), GateId(1))]);
    // greedy runs the longer (1,2) first
    assert!((makespan(&c, &schedule_greedy(&c).unwrap()).unwrap() - 7.01).abs() < 1e-9);
}

#[test]
fn fully_ordered_qubit_is_a_chain() {
    use qsched::{CircuitInstance, Gate};
    let c = CircuitInstance::new(
        1,
        vec![Gate::single(0, 0, 1.0), Gate::single(1, 0, 2.0), Gate::single(2, 0, 3.0)],
        vec![(GateId(2), GateId(0)), (GateId(0), GateId(1)), (GateId(2), GateId(1))],
    );
    let r = schedule_exact(&c, &ExactOptions::default()).unwrap();
    assert_eq!(r.makespan, 6.0);
    assert_eq!(r.schedule.starts[&GateId(2)], 0.0);
    assert_eq!(r.schedule.starts[&GateId(0)], 3.0);
    assert_eq!(r.nodes_explored, 0);
}
