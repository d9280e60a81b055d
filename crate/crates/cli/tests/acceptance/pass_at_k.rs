use codegauntlet_core::metrics::{pass_at_k, PassAtKInput};

use crate::CriterionResult;

/// Fraction of the k-subsets of `n` samples (the first `c` correct) that hold
/// at least one correct sample, by enumerating bitmasks.
fn brute_force(n: u32, c: u32, k: u32) -> f64 {
    let correct_mask = (1u32 << c) - 1;
    let (mut hits, mut total) = (0u64, 0u64);
    for subset in 0u32..(1 << n) {
        if subset.count_ones() == k {
            total += 1;
            if subset & correct_mask != 0 {
                hits += 1;
            }
        }
    }
    hits as f64 / total as f64
}

pub fn run() -> CriterionResult {
    let mut cases = 0;
    for n in 1..=8u32 {
        for c in 0..=n {
            for k in 1..=n {
                let input = PassAtKInput::new(n.into(), c.into()).map_err(|e| e.to_string())?;
                let got: f64 = pass_at_k(input, k.into()).map_err(|e| e.to_string())?;
                let want = brute_force(n, c, k);
                check!((got - want).abs() <= 1e-12, "n={n} c={c} k={k}: {got} vs brute force {want}");
                cases += 1;
            }
        }
    }
    let anchor: f64 = pass_at_k(PassAtKInput::new(5, 2).map_err(|e| e.to_string())?, 2).map_err(|e| e.to_string())?;
    check!((anchor - 0.7).abs() <= 1e-12, "n=5 c=2 k=2 gave {anchor}, expected 0.7");
    Ok(format!("{cases} (n, c, k) cases within 1e-12; n=5 c=2 k=2 gives {anchor}"))
}
