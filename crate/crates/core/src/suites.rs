//! Exhaustive small-degree sweeps behind the `selftest` command.

use std::fmt;
use std::time::{Duration, Instant};

use crate::basis::{decompose_k, decompose_l, k_from_l, l_from_k, reconstruct, Basis, Decomposition};
use crate::families::{k_series, l_series};
use crate::oracle::{appendix_coefficient, check_spreading, q_square_in_span};
use crate::series::{all_monomials, Series};
use crate::shuffle::k1_product;
use crate::subset::{all_subsets, SubsetSpec};

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub name: String,
    pub checks: usize,
    pub failures: Vec<String>,
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} {} ({} checks, {:.2?})",
            self.name, self.checks, self.elapsed
        )?;
        for msg in self.failures.iter().take(5) {
            write!(f, "\n    {msg}")?;
        }
        if self.failures.len() > 5 {
            write!(f, "\n    ... {} more", self.failures.len() - 5)?;
        }
        Ok(())
    }
}

struct Recorder {
    checks: usize,
    failures: Vec<String>,
    start: Instant,
}

impl Recorder {
    fn new() -> Self {
        Self {
            checks: 0,
            failures: Vec::new(),
            start: Instant::now(),
        }
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(msg());
        }
    }

    fn finish(self, name: impl Into<String>) -> SuiteReport {
        SuiteReport {
            name: name.into(),
            checks: self.checks,
            failures: self.failures,
            elapsed: self.start.elapsed(),
        }
    }
}

/// Pairs `(Λ ⊆ [n], Ω ⊆ [m])` for every `n + m <= max_total`.
pub fn factor_pairs(max_total: usize) -> Vec<(SubsetSpec, SubsetSpec)> {
    let mut out = Vec::new();
    for total in 0..=max_total {
        for n in 0..=total {
            for left in all_subsets(n) {
                for right in all_subsets(total - n) {
                    out.push((left.clone(), right));
                }
            }
        }
    }
    out
}

fn round_trip(
    basis: Basis,
    product: &Series,
    dec: crate::Result<Decomposition>,
) -> std::result::Result<(), String> {
    let dec = dec.map_err(|e| e.to_string())?;
    if dec.basis() != basis {
        return Err(format!("decomposition came back in basis {}", dec.basis()));
    }
    let back = reconstruct(&dec, product.trunc()).map_err(|e| e.to_string())?;
    if &back != product {
        return Err("reconstruction differs from the product".into());
    }
    Ok(())
}

/// Every `L` product and every `K` product with `n + m <= max_total`
/// decomposes with zero residual at `V = n + m` and reconstructs exactly.
pub fn closure(max_total: usize) -> SuiteReport {
    let mut rec = Recorder::new();
    for (left, right) in factor_pairs(max_total) {
        let v = (left.n() + right.n()).max(1) as u32;
        let lp = l_series(&left, v).mul(&l_series(&right, v)).expect("same truncation");
        let r = round_trip(Basis::L, &lp, decompose_l(&lp));
        rec.check(r.is_ok(), || format!("L{left}*L{right}: {}", r.unwrap_err()));
        let kp = k_series(&left, v).mul(&k_series(&right, v)).expect("same truncation");
        let r = round_trip(Basis::K, &kp, decompose_k(&kp));
        rec.check(r.is_ok(), || format!("K{left}*K{right}: {}", r.unwrap_err()));
    }
    rec.finish(format!("closure n+m<={max_total}"))
}

/// `k_from_l` and `l_from_k` invert each other for every subset with
/// `n <= max_n`.
pub fn mobius(max_n: usize) -> SuiteReport {
    let mut rec = Recorder::new();
    for n in 0..=max_n {
        for spec in all_subsets(n) {
            for basis in [Basis::K, Basis::L] {
                let single = Decomposition::single(&spec, basis);
                let there = match basis {
                    Basis::K => k_from_l(&spec),
                    Basis::L => l_from_k(&spec),
                };
                let back = there.to_basis(basis);
                rec.check(back == single, || format!("{basis}_{{{n},{spec}}} round trip"));
            }
        }
    }
    rec.finish(format!("mobius n<={max_n}"))
}

/// `Σ_{Ξ ∈ k1_product(Ω)} K_{m+1,Ξ} = K_{1,Λ} K_{m,Ω}` for both `Λ ⊆ [1]`.
pub fn k1_formula(max_m: usize) -> SuiteReport {
    let mut rec = Recorder::new();
    for m in 0..=max_m {
        let v = m as u32 + 1;
        for right in all_subsets(m) {
            let mut sum = Series::zero(m + 1, v);
            for spec in k1_product(&right).expanded() {
                sum = sum.add(&k_series(spec, v)).expect("same shape");
            }
            for left in all_subsets(1) {
                let prod = k_series(&left, v).mul(&k_series(&right, v)).expect("same truncation");
                rec.check(sum == prod, || format!("K_{{1,{left}}}*K_{{{m},{right}}}"));
            }
        }
    }
    rec.finish(format!("shuffle formula m<={max_m}"))
}

/// The case-table coefficient agrees with the direct product on every
/// degree-`(m+1)` monomial at `V = m + 1`.
pub fn appendix(max_m: usize) -> SuiteReport {
    let mut rec = Recorder::new();
    for m in 0..=max_m {
        let v = m as u32 + 1;
        let left = k_series(&SubsetSpec::empty(1), v);
        for right in all_subsets(m) {
            let prod = left.mul(&k_series(&right, v)).expect("same truncation");
            for mono in all_monomials(m + 1, v) {
                let ok = appendix_coefficient(&mono, &right).ok() == Some(prod.coefficient(&mono));
                rec.check(ok, || format!("[{mono}] K_{{1,{{}}}}*K_{{{m},{right}}}"));
            }
        }
    }
    rec.finish(format!("case-table coefficients m<={max_m}"))
}

/// Base 3 squares leave the span, base 2 squares stay in it.
pub fn q_rigidity() -> SuiteReport {
    let mut rec = Recorder::new();
    let three = q_square_in_span(3, 2);
    rec.check(matches!(three, Ok(None)), || "q=3 square is in the span".into());
    let two = q_square_in_span(2, 2);
    rec.check(matches!(two, Ok(Some(_))), || "q=2 square is outside the span".into());
    rec.finish("base-q obstruction")
}

/// Spreading holds for every `L` product with `n + m <= max_total` and
/// every `L_{d,Ξ}` with `d <= max_total`, at `V = degree + 1`.
pub fn spreading(max_total: usize) -> SuiteReport {
    let mut rec = Recorder::new();
    for (left, right) in factor_pairs(max_total) {
        let v = (left.n() + right.n()) as u32 + 1;
        let prod = l_series(&left, v).mul(&l_series(&right, v)).expect("same truncation");
        rec.check(check_spreading(&prod).unwrap_or(false), || {
            format!("L{left}*L{right}")
        });
    }
    for d in 0..=max_total {
        for spec in all_subsets(d) {
            let f = l_series(&spec, d as u32 + 1);
            rec.check(check_spreading(&f).unwrap_or(false), || format!("L_{{{d},{spec}}}"));
        }
    }
    rec.finish(format!("spreading n+m<={max_total}"))
}

/// The suites run by `selftest`.
pub fn selftest() -> Vec<SuiteReport> {
    vec![
        closure(5),
        mobius(6),
        k1_formula(4),
        appendix(4),
        q_rigidity(),
        spreading(4),
    ]
}
