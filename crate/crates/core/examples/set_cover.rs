//! Set cover written as UFL: one facility per set, one client per element.

use tmcfl::model::Instance;
use tmcfl::solvers::{exact_cfl, greedy_ufl, ENUMERATION_LIMIT};

fn main() {
    let sets: [&[usize]; 4] = [&[0, 1, 2], &[2, 3], &[3, 4], &[0, 4]];
    let elements = 5;
    let far = 2 * sets.len() as i64;
    let costs = sets
        .iter()
        .map(|s| {
            (0..elements)
                .map(|e| if s.contains(&e) { 0 } else { far })
                .collect()
        })
        .collect();
    let facilities: Vec<(i64, i64)> = sets.iter().map(|_| (elements as i64, 1)).collect();
    let inst = Instance::ufl(&facilities, &vec![1; elements], costs).unwrap();

    let greedy = greedy_ufl(&inst).unwrap();
    let exact = exact_cfl(&inst, ENUMERATION_LIMIT).unwrap();
    println!("greedy picks {:?} (cost {})", greedy.open, greedy.objective);
    println!("optimal cover {:?} (cost {})", exact.open, exact.objective);
}
