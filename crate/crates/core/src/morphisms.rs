//! Morphisms of codes determined by lists of trunks.

use std::collections::{BTreeMap, BTreeSet};

use crate::code::{Code, Codeword, SimplicialComplex};
use crate::error::{Error, Result};
use crate::families;

/// Whether `s` is a trunk of `c`: empty, or `Tk_C(σ*)` for `σ*` the
/// intersection of its members.
pub fn is_trunk(c: &Code, s: &[Codeword]) -> bool {
    if s.is_empty() {
        return true;
    }
    if s.iter().any(|w| !c.contains(*w)) {
        return false;
    }
    let core = s.iter().fold(c.full_word(), |acc, w| acc.intersection(*w));
    let members: BTreeSet<Codeword> = s.iter().copied().collect();
    c.trunk_unchecked(core).eq(members.iter().copied())
}

/// The morphism `c ↦ {i | c ∈ T_i}` given by trunks `T_1, ..., T_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrunkMorphism {
    source: Code,
    trunks: Vec<BTreeSet<Codeword>>,
}

impl TrunkMorphism {
    /// Validates every listed set; the first non-trunk is reported 1-indexed.
    pub fn new(source: Code, trunks: Vec<Vec<Codeword>>) -> Result<Self> {
        if trunks.len() > crate::code::MAX_NEURONS {
            return Err(Error::cap("trunks in a morphism", trunks.len(), crate::code::MAX_NEURONS));
        }
        let mut sets = Vec::with_capacity(trunks.len());
        for (i, t) in trunks.into_iter().enumerate() {
            if !is_trunk(&source, &t) {
                return Err(Error::NotATrunk { index: i + 1 });
            }
            sets.push(t.into_iter().collect());
        }
        Ok(TrunkMorphism { source, trunks: sets })
    }

    /// Trunks given as positions into the canonical order of `source`.
    pub fn from_indices(source: Code, trunks: &[Vec<usize>]) -> Result<Self> {
        let words: Vec<Codeword> = source.iter().collect();
        let lists = trunks
            .iter()
            .map(|idx| {
                idx.iter()
                    .map(|&k| {
                        words.get(k).copied().ok_or_else(|| {
                            Error::Parse(format!(
                                "codeword index {k} is out of range for a code with {} codewords",
                                words.len()
                            ))
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        TrunkMorphism::new(source, lists)
    }

    /// The morphism determined by `Tk(σ_1), ..., Tk(σ_m)`.
    pub fn from_generators(source: Code, sigmas: &[Codeword]) -> Result<Self> {
        let trunks = sigmas
            .iter()
            .map(|&s| source.trunk(s))
            .collect::<Result<Vec<_>>>()?;
        TrunkMorphism::new(source, trunks)
    }

    pub fn source(&self) -> &Code {
        &self.source
    }

    pub fn trunks(&self) -> &[BTreeSet<Codeword>] {
        &self.trunks
    }

    /// Number of target neurons.
    pub fn target_n(&self) -> usize {
        self.trunks.len()
    }

    /// Canonical positions of each trunk's members, as used by the JSON format.
    pub fn trunk_indices(&self) -> Vec<Vec<usize>> {
        let index: BTreeMap<Codeword, usize> =
            self.source.iter().enumerate().map(|(i, w)| (w, i)).collect();
        self.trunks
            .iter()
            .map(|t| t.iter().map(|w| index[w]).collect())
            .collect()
    }

    pub fn image_of(&self, c: Codeword) -> Codeword {
        let mut bits = 0u64;
        for (i, t) in self.trunks.iter().enumerate() {
            if t.contains(&c) {
                bits |= 1 << i;
            }
        }
        Codeword::from_bits(bits)
    }

    /// Images of every source codeword, without adding `∅`.
    pub fn raw_image(&self) -> BTreeSet<Codeword> {
        self.source.iter().map(|c| self.image_of(c)).collect()
    }

    /// The image code on `[m]`, with `∅` added.
    pub fn apply(&self) -> Result<Code> {
        Code::from_codewords(self.target_n(), self.raw_image())
    }

    /// `g ∘ self`, where `g` is defined on the image of `self`.
    pub fn then(&self, g: &TrunkMorphism) -> Result<TrunkMorphism> {
        let image = self.apply()?;
        if g.source != image {
            return Err(Error::precondition(
                "the second morphism must be defined on the image of the first",
            ));
        }
        let trunks = g
            .trunks
            .iter()
            .map(|t| {
                self.source
                    .iter()
                    .filter(|&c| t.contains(&self.image_of(c)))
                    .collect()
            })
            .collect();
        TrunkMorphism::new(self.source.clone(), trunks).map_err(|e| match e {
            Error::NotATrunk { index } => Error::Internal(format!(
                "preimage of trunk {index} under a morphism is not a trunk"
            )),
            other => other,
        })
    }
}

/// Applies `f` and returns the image code.
pub fn apply_morphism(f: &TrunkMorphism) -> Result<Code> {
    f.apply()
}

/// Whether `f: C → D` is a morphism. Only simple trunks `Tk_D(i)` need
/// checking: every trunk of `D` is an intersection of simple ones, preimages
/// commute with intersections, and trunks are closed under intersection.
pub fn is_morphism_map(c: &Code, d: &Code, f: &BTreeMap<Codeword, Codeword>) -> Result<bool> {
    for w in c.iter() {
        match f.get(&w) {
            None => return Err(Error::precondition(format!("the map is undefined on codeword {w}"))),
            Some(img) if !d.contains(*img) => {
                return Err(Error::precondition(format!(
                    "the image {img} of {w} is not a codeword of the target"
                )))
            }
            _ => {}
        }
    }
    Ok((1..=d.n()).all(|i| {
        let pre: Vec<Codeword> = c.iter().filter(|w| f[w].contains(i)).collect();
        is_trunk(c, &pre)
    }))
}

/// Relabels the neurons of `sigma` as `1..=|σ|`, preserving order.
fn compress(w: Codeword, sigma: Codeword) -> Codeword {
    let mut bits = 0u64;
    for (k, i) in sigma.iter().enumerate() {
        if w.contains(i) {
            bits |= 1 << k;
        }
    }
    Codeword::from_bits(bits)
}

/// The image of `c ↦ c ∩ σ`, relabelled onto `[|σ|]`.
pub fn restriction(c: &Code, sigma: Codeword) -> Result<Code> {
    c.check_subset(sigma)?;
    c.map_words(sigma.weight(), |w| compress(w, sigma))
}

/// `c ↦ c ∩ σ` as the morphism determined by the simple trunks of `σ`.
pub fn restriction_morphism(c: &Code, sigma: Codeword) -> Result<TrunkMorphism> {
    c.check_subset(sigma)?;
    let gens: Vec<Codeword> = sigma.iter().map(Codeword::singleton).collect();
    TrunkMorphism::from_generators(c.clone(), &gens)
}

/// Deletes the neurons of the unique minimal codeword (if there is one) and
/// relabels, producing an isomorphic code that contains `∅`.
pub fn normalize_minimal(n: usize, words: &[Codeword]) -> Result<Code> {
    let core = words
        .iter()
        .fold(Codeword::full(n), |acc, w| acc.intersection(*w));
    if !words.is_empty() && !words.contains(&core) {
        return Err(Error::precondition(
            "the words have no unique minimal element to delete",
        ));
    }
    let keep = Codeword::full(n).difference(core);
    Code::from_codewords(keep.weight(), words.iter().map(|&w| compress(w, keep)))
}

/// The trunk `Tk_C(σ)` as a code in its own right.
pub fn trunk_code(c: &Code, sigma: Codeword) -> Result<Code> {
    let t = c.trunk(sigma)?;
    if t.is_empty() {
        return Err(Error::precondition(format!("the trunk of {sigma} is empty")));
    }
    normalize_minimal(c.n(), &t)
}

/// The surjection `S_Δ → S_m` given by the facet trunks and `Tk(n+1)`.
pub fn sdelta_to_sm(delta: &SimplicialComplex) -> Result<TrunkMorphism> {
    if delta.is_full_simplex() {
        return Err(Error::precondition("Δ must be a proper subcomplex of the full simplex"));
    }
    if delta.facets().iter().any(|f| f.is_empty()) {
        return Err(Error::precondition("Δ must have a nonempty facet"));
    }
    let source = families::make_s_delta(delta)?;
    let mut gens: Vec<Codeword> = delta.facets().to_vec();
    gens.push(Codeword::singleton(delta.n() + 1));
    TrunkMorphism::from_generators(source, &gens)
}

/// The surjection `S_{C/D} → S_{E/min}` and the code `E` (the image of `C`
/// under the trunks of the maximal codewords of `D`).
pub fn scd_to_semin(c: &Code, d: &Code) -> Result<(Code, TrunkMorphism)> {
    let source = families::make_s_c_over_d(c, d)?;
    let maximal = d.maximal_codewords();
    if maximal.iter().all(|f| f.is_empty()) {
        return Err(Error::precondition("D must have a nonempty codeword"));
    }
    let m = maximal.len();
    let e_map = TrunkMorphism::from_generators(c.clone(), &maximal)?;
    let e = e_map.apply()?;
    let mut gens = maximal;
    gens.push(Codeword::singleton(c.n() + 1));
    let f = TrunkMorphism::from_generators(source, &gens)?;
    debug_assert_eq!(f.target_n(), m + 1);
    if f.apply()? != families::make_s_c_over_min(&e)? {
        return Err(Error::Internal("image of S_C/D differs from S_E/min".into()));
    }
    Ok((e, f))
}

/// Caps for [`find_minor`].
pub const MINOR_MAX_SOURCE_WORDS: usize = 64;
pub const MINOR_MAX_TARGET_N: usize = 5;

/// A witness that `target` is a minor of some code: a trunk of the source
/// (normalised) followed by a surjective trunk morphism onto `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorWitness {
    pub trunk_of: Codeword,
    pub morphism: TrunkMorphism,
}

/// Searches for `target` as the exact image of a trunk of `source` under a
/// trunk-determined morphism. Target labels are matched exactly; reordering
/// the trunk list covers every relabelling.
pub fn find_minor(source: &Code, target: &Code) -> Result<Option<MinorWitness>> {
    if source.len() > MINOR_MAX_SOURCE_WORDS {
        return Err(Error::cap("source codewords for minor search", source.len(), MINOR_MAX_SOURCE_WORDS));
    }
    if target.n() > MINOR_MAX_TARGET_N {
        return Err(Error::cap("target neurons for minor search", target.n(), MINOR_MAX_TARGET_N));
    }
    let cores: BTreeSet<Codeword> = source.intersection_completion().iter().collect();
    for &sigma in &cores {
        let t = trunk_code(source, sigma)?;
        if let Some(f) = find_surjection(&t, target)? {
            return Ok(Some(MinorWitness { trunk_of: sigma, morphism: f }));
        }
    }
    Ok(None)
}

/// A trunk morphism from `source` whose image is exactly `target`.
pub fn find_surjection(source: &Code, target: &Code) -> Result<Option<TrunkMorphism>> {
    if target.n() > MINOR_MAX_TARGET_N {
        return Err(Error::cap("target neurons for minor search", target.n(), MINOR_MAX_TARGET_N));
    }
    let mut trunks: Vec<Vec<Codeword>> = vec![Vec::new()];
    let mut seen = BTreeSet::new();
    for core in source.intersection_completion().iter() {
        let t: Vec<Codeword> = source.trunk_unchecked(core).collect();
        if seen.insert(t.clone()) {
            trunks.push(t);
        }
    }
    let words: Vec<Codeword> = source.iter().collect();
    let target_words: BTreeSet<Codeword> = target.iter().collect();
    let mut images = vec![0u64; words.len()];
    let mut choice = Vec::with_capacity(target.n());
    if search(&words, &trunks, &target_words, target.n(), &mut images, &mut choice) {
        let lists = choice.iter().map(|&k| trunks[k].clone()).collect();
        return Ok(Some(TrunkMorphism::new(source.clone(), lists)?));
    }
    Ok(None)
}

fn search(
    words: &[Codeword],
    trunks: &[Vec<Codeword>],
    target: &BTreeSet<Codeword>,
    m: usize,
    images: &mut [u64],
    choice: &mut Vec<usize>,
) -> bool {
    let j = choice.len();
    let prefix = if j == 64 { u64::MAX } else { (1u64 << j) - 1 };
    let got: BTreeSet<u64> = images.iter().copied().collect();
    let want: BTreeSet<u64> = target.iter().map(|w| w.bits() & prefix).collect();
    if got != want {
        return false;
    }
    if j == m {
        return true;
    }
    for (k, t) in trunks.iter().enumerate() {
        let saved = images.to_vec();
        for (slot, w) in images.iter_mut().zip(words) {
            if t.contains(w) {
                *slot |= 1 << j;
            }
        }
        choice.push(k);
        if search(words, trunks, target, m, images, choice) {
            return true;
        }
        choice.pop();
        images.copy_from_slice(&saved);
    }
    false
}
