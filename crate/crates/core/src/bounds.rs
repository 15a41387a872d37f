//! Embedding-dimension bounds for intersection complete codes.

use serde::Serialize;

use crate::code::{Code, Codeword};
use crate::error::{Error, Result};
use crate::families;

/// Which quantity a bound constrains.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    OdimLower,
    OdimUpper,
    CdimLower,
    CdimUpper,
    ExactOdim,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reason {
    pub quantity: Quantity,
    pub value: usize,
    pub source: &'static str,
}

/// Bounds on `odim` and `cdim`. `None` in an upper field means unbounded.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub codewords: usize,
    pub intersection_complete: bool,
    pub simplicial_complex: bool,
    /// Number of maximal codewords, i.e. `m + 1`.
    pub maximal_codewords: usize,
    /// `max{2, m}` for `m + 1` maximal codewords; only set for IC codes.
    pub max_codeword_bound: Option<usize>,
    pub complex_dim: i64,
    pub family: Option<String>,
    pub odim_lower: usize,
    pub odim_upper: Option<usize>,
    pub cdim_lower: usize,
    pub cdim_upper: Option<usize>,
    pub exact_odim: Option<usize>,
    pub reasons: Vec<Reason>,
}

impl BoundReport {
    fn note(&mut self, quantity: Quantity, value: usize, source: &'static str) {
        self.reasons.push(Reason { quantity, value, source });
        match quantity {
            Quantity::OdimLower => self.odim_lower = self.odim_lower.max(value),
            Quantity::CdimLower => self.cdim_lower = self.cdim_lower.max(value),
            Quantity::OdimUpper => self.odim_upper = Some(self.odim_upper.map_or(value, |u| u.min(value))),
            Quantity::CdimUpper => self.cdim_upper = Some(self.cdim_upper.map_or(value, |u| u.min(value))),
            Quantity::ExactOdim => {
                self.odim_lower = self.odim_lower.max(value);
                self.odim_upper = Some(self.odim_upper.map_or(value, |u| u.min(value)));
            }
        }
    }

    fn consistent(&self) -> bool {
        let ok = |lo: usize, hi: Option<usize>| hi.map_or(true, |h| lo <= h);
        ok(self.odim_lower, self.odim_upper) && ok(self.cdim_lower, self.cdim_upper)
    }
}

/// Exact values of `odim(T_n)` for `n = 1..=5`.
pub const T_N_TABLE: [usize; 5] = [1, 2, 3, 3, 4];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TnBounds {
    pub lower: usize,
    pub upper: usize,
    pub exact: Option<usize>,
}

/// Bounds on `t_n = odim(T_n)`: the table for `n <= 5`, otherwise the
/// half-lower bound together with monotonicity and the `+1` step bound.
pub fn t_n_bounds(n: usize) -> Result<TnBounds> {
    if n == 0 {
        return Err(Error::precondition("t_n is defined for n >= 1"));
    }
    if n <= T_N_TABLE.len() {
        let t = T_N_TABLE[n - 1];
        return Ok(TnBounds { lower: t, upper: t, exact: Some(t) });
    }
    let lower = n.div_ceil(2).max(T_N_TABLE[4]);
    let upper = T_N_TABLE[4] + (n - 5);
    Ok(TnBounds {
        lower,
        upper,
        exact: (lower == upper).then_some(lower),
    })
}

/// `C(n-1, ⌊(n-1)/2⌋)`: the largest `m` for which the facet-choice
/// construction yields an IC code on `n` neurons with `odim = m`.
pub fn binomial_extremal(n: usize) -> Result<u64> {
    if n == 0 {
        return Err(Error::precondition("binomial_extremal needs n >= 1"));
    }
    if n > 64 {
        return Err(Error::InvalidNeuronCount(n));
    }
    let top = (n - 1) as u128;
    let k = top / 2;
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (top - i) / (i + 1);
    }
    Ok(acc as u64)
}

/// The largest number of maximal codewords of `D` whose union is a face of
/// `Δ(C)`.
///
/// A family of words has its union in `Δ(C)` exactly when some codeword of
/// `C` contains all of them, so the maximum is attained by counting, for each
/// `c ∈ C`, the maximal words of `D` below it.
pub fn compute_k(c: &Code, d: &Code) -> Result<usize> {
    check_d_in_c(c, d)?;
    let maximal: Vec<Codeword> = d.maximal_codewords();
    Ok(c
        .iter()
        .map(|w| maximal.iter().filter(|f| f.is_subset_of(w)).count())
        .max()
        .unwrap_or(0))
}

fn check_d_in_c(c: &Code, d: &Code) -> Result<()> {
    if d.n() > c.n() {
        return Err(Error::precondition(format!(
            "D lives on {} neurons but C only on {}",
            d.n(),
            c.n()
        )));
    }
    match d.iter().find(|w| !c.contains(*w)) {
        Some(w) => Err(Error::precondition(format!("D is not contained in C: {w} is missing"))),
        None => Ok(()),
    }
}

/// `(⌈m/k⌉, m)` bounds on `odim(S_{C/D})`, with `m` the number of maximal
/// codewords of `D` (which must be at least 2).
pub fn scd_bounds(c: &Code, d: &Code) -> Result<(usize, usize)> {
    check_d_in_c(c, d)?;
    for (name, code) in [("C", c), ("D", d)] {
        if let Some((a, b)) = code.first_missing_intersection() {
            return Err(Error::NotIntersectionComplete(format!("{name}: {a} ∩ {b} is not a codeword")));
        }
    }
    let m = d.maximal_codewords().len();
    if m < 2 {
        return Err(Error::precondition(format!(
            "D must have at least 2 maximal codewords, found {m}"
        )));
    }
    let k = compute_k(c, d)?;
    Ok((m.div_ceil(k), m))
}

/// Splits an IC code on `[n+1]` as `S_{C/D}` when `[n]` and `{n+1}` are
/// codewords. Every such code decomposes: `C` is the part avoiding `n+1` and
/// `D` the link of `n+1`. `[n]` is dropped from `C` when that keeps `C`
/// intersection complete and above `D`, which sharpens weight-based bounds.
pub fn split_s_c_over_d(code: &Code) -> Option<(Code, Code)> {
    let total = code.n();
    if total < 2 || !code.is_intersection_complete() {
        return None;
    }
    let n = total - 1;
    let apex = Codeword::singleton(total);
    let base = Codeword::full(n);
    if !code.contains(apex) || !code.contains(base) {
        return None;
    }
    let d = Code::from_codewords(
        n,
        code.iter().filter(|w| w.contains(total)).map(|w| w.difference(apex)),
    )
    .ok()?;
    let c_full = Code::from_codewords(n, code.iter().filter(|w| !w.contains(total))).ok()?;
    let c_trim = Code::from_codewords(n, c_full.iter().filter(|&w| w != base)).ok()?;
    let c = if n >= 1
        && !d.contains(base)
        && c_trim.is_intersection_complete()
        && d.iter().all(|w| c_trim.contains(w))
    {
        c_trim
    } else {
        c_full
    };
    Some((c, d))
}

/// Bounds on `odim` and `cdim` with the reason behind each one.
pub fn bound_report(code: &Code) -> BoundReport {
    let n = code.n();
    let maximal = code.maximal_codewords().len();
    let ic = code.is_intersection_complete();
    let complex = code.is_simplicial_complex();
    let mut r = BoundReport {
        n,
        codewords: code.len(),
        intersection_complete: ic,
        simplicial_complex: complex,
        maximal_codewords: maximal,
        max_codeword_bound: None,
        complex_dim: code.dim(),
        family: None,
        odim_lower: 0,
        odim_upper: None,
        cdim_lower: 0,
        cdim_upper: None,
        exact_odim: None,
        reasons: Vec::new(),
    };

    if code.len() == 1 {
        // {∅}: realised by no sets at all in any dimension.
        for q in [Quantity::ExactOdim, Quantity::CdimUpper] {
            r.note(q, 0, "only-empty-codeword");
        }
        r.exact_odim = Some(0);
        return r;
    }
    r.note(Quantity::OdimLower, 1, "nonempty-codeword-needs-dimension");
    r.note(Quantity::CdimLower, 1, "nonempty-codeword-needs-dimension");
    if !ic {
        return r;
    }

    let m = maximal - 1;
    let cgik = m.max(2);
    r.max_codeword_bound = Some(cgik);
    r.note(Quantity::OdimUpper, cgik, "max-codewords-upper");
    r.note(Quantity::CdimUpper, cgik, "max-codewords-upper");
    let d = code.dim().max(0) as usize;
    r.note(Quantity::CdimUpper, 2 * d + 1, "closed-dim-linear-in-complex-dim");
    if n >= 2 {
        r.note(Quantity::CdimUpper, n - 1, "closed-dim-below-neuron-count");
    }

    recognize_families(code, &mut r);

    // cdim <= odim for IC codes.
    if let Some(u) = r.odim_upper {
        r.note(Quantity::CdimUpper, u, "closed-dim-at-most-open-dim");
    }
    if complex {
        if let Some(u) = r.cdim_upper {
            r.note(Quantity::OdimUpper, u, "complex-open-equals-closed");
        }
        let lo = r.odim_lower;
        r.note(Quantity::CdimLower, lo, "complex-open-equals-closed");
    }
    if r.odim_upper == Some(r.odim_lower) {
        r.exact_odim = Some(r.odim_lower);
    }
    debug_assert!(r.consistent(), "inconsistent bound report {r:?}");
    r
}

fn recognize_families(code: &Code, r: &mut BoundReport) {
    let n = code.n();
    if n % 2 == 0 {
        if let Ok(t) = families::make_t_n(n / 2) {
            if &t == code {
                let b = t_n_bounds(n / 2).expect("n/2 >= 1");
                r.family = Some(format!("T_{}", n / 2));
                if let Some(e) = b.exact {
                    r.note(Quantity::ExactOdim, e, "tangled-table");
                } else {
                    r.note(Quantity::OdimLower, b.lower, "tangled-half-and-monotone");
                    r.note(Quantity::OdimUpper, b.upper, "tangled-unit-steps");
                }
            }
        }
    }

    let Some((c, d)) = split_s_c_over_d(code) else {
        return;
    };
    let base_n = n - 1;
    if families::make_s_n(base_n).as_ref() == Ok(code) {
        r.family.get_or_insert_with(|| format!("S_{base_n}"));
        r.note(Quantity::ExactOdim, base_n, "sunflower-code");
        return;
    }
    let m = d.maximal_codewords().len();
    let is_delta = c == d && c.is_simplicial_complex();
    if is_delta && m >= 2 {
        r.family.get_or_insert_with(|| format!("S_Delta (m = {m})"));
        r.note(Quantity::ExactOdim, m, "cone-plus-top-facet-count");
        return;
    }
    let has_singletons = (1..=base_n).all(|i| c.contains(Codeword::singleton(i)));
    if has_singletons && d == families::minimal_words_code(&c) {
        r.family.get_or_insert_with(|| "S_C/min".to_string());
        let k = c.dim().max(0) as usize + 1;
        r.note(Quantity::OdimLower, base_n.div_ceil(k), "flexible-sunflower-weight-ratio");
    }
    if m >= 2 {
        r.family.get_or_insert_with(|| format!("S_C/D (m = {m})"));
        let k = compute_k(&c, &d).expect("D is contained in C by construction");
        r.note(Quantity::OdimLower, m.div_ceil(k), "glued-sunflower-ratio");
        r.note(Quantity::OdimUpper, m, "glued-sunflower-facets");
    }
}
