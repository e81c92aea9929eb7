//! Runs one simple-process realization to jam and prints its final state.
//!
//! `cargo run -p srg-core --example jam -- 100000 0.5 7`

use srg_core::{GraphState, ProcessParams};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: usize = args.first().and_then(|a| a.parse().ok()).unwrap_or(100_000);
    let p: f64 = args.get(1).and_then(|a| a.parse().ok()).unwrap_or(0.5);
    let seed: u64 = args.get(2).and_then(|a| a.parse().ok()).unwrap_or(1);

    let mut state = GraphState::new(ProcessParams::simple(n, p).with_seed(seed)).expect("valid parameters");
    let jam = state.run_to_jam().expect("simple process jams");
    println!("N = {n}, p = {p}, seed = {seed}");
    println!("jammed at t = {:.4} (t / ln N = {:.4})", jam.t_jam, jam.t_jam / (n as f64).ln());
    println!("unicycles: {}, largest: {} (K/N = {:.4})", jam.u_jam, jam.largest_unicycle, jam.kappa());
    let smallest: Vec<String> = jam.uni_hist.iter().take(5).map(|(k, c)| format!("{k}:{c}")).collect();
    println!("smallest sizes (size:count): {}", smallest.join(" "));
}
