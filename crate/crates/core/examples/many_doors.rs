//! How the informed-host switching edge changes with the number of doors:
//! one prize with all but one other door opened, and the 37%-prize setting
//! with three doors opened.
//!
//!     cargo run --example many_doors

use montyhall::{analytic, ProblemConfig};

fn main() {
    println!("m=1, host opens N-2 empty doors");
    for n in [3, 4, 5, 10, 100, 1000] {
        let c = ProblemConfig::informed(n, 1, n - 2, 0).validate().unwrap();
        let o = analytic::probabilities(&c);
        println!(
            "  N={n:<5} stay {:>8}  switch {:>10}",
            o.stay.to_string(),
            o.switch.to_string()
        );
    }

    println!("m = 37% of N, host opens 3 doors showing 2 prizes");
    for n in [10, 20, 50, 100, 1000] {
        let m = n * 37 / 100;
        let c = ProblemConfig::informed(n, m, 3, 2).validate().unwrap();
        let o = analytic::probabilities(&c);
        let edge = o.switch.to_f64() - o.stay.to_f64();
        println!(
            "  N={n:<5} m={m:<4} stay {}  switch {}  switch - stay {edge:+.5}",
            o.stay.to_decimal(5),
            o.switch.to_decimal(5)
        );
    }
}
