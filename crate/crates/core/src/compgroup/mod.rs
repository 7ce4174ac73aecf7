//! Component group of a PGL_n centralizer.
//!
//! The centralizer of `[A_1..A_k]` is the disjoint union of the strata that
//! contain an invertible matrix. The untwisted stratum Δ₀ is the unit group of
//! the commutant algebra, hence connected, and each witnessed stratum is a
//! translate `X·Δ₀` of it. So π₀ is the set of witnessed twist tuples, a
//! subgroup of (ℤ/mℤ)^k. Closure under addition is checked, not assumed.

mod smith;

use std::collections::{BTreeSet, HashSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::exactla::Matrix;
use crate::twistcent::{
    solve_stratum, CentralizerError, GeneratorSet, Stratum, StratumStatus, TwistTuple,
    WitnessSearch,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error(transparent)]
    Centralizer(#[from] CentralizerError),
    #[error("the zero twist has no witness")]
    MissingIdentity,
    #[error("witnessed twists {0} and {1} have an unwitnessed sum")]
    ClosureViolation(TwistTuple, TwistTuple),
    #[error("{found} witnessed twists but invariant factors give order {expected}")]
    OrderMismatch { found: usize, expected: u64 },
}

#[derive(Clone, Debug)]
pub struct ComponentGroupReport {
    pub n: usize,
    /// Order of the cyclotomic field the generators live in.
    pub field_order: u32,
    /// Order of the twisting roots of unity.
    pub m: u32,
    /// Every stratum, lexicographic by twist.
    pub strata: Vec<Stratum>,
    pub centralizer_dim: usize,
    pub nonempty_twists: Vec<TwistTuple>,
    pub subgroup_generators: Vec<TwistTuple>,
    pub invariant_factors: Vec<u64>,
    pub iso_label: String,
}

impl ComponentGroupReport {
    /// The untwisted stratum Δ₀.
    pub fn centralizer(&self) -> &Stratum {
        &self.strata[0]
    }

    pub fn stratum(&self, twist: &TwistTuple) -> Option<&Stratum> {
        self.strata.iter().find(|s| &s.twist == twist)
    }

    /// One representative per witnessed twist.
    pub fn witnesses(&self) -> impl Iterator<Item = (&TwistTuple, &Matrix)> {
        self.strata
            .iter()
            .filter_map(|s| s.witness.as_ref().map(|w| (&s.twist, w)))
    }

    pub fn group_order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }
}

/// Component group with the default witness search.
pub fn component_group(gens: &GeneratorSet, seed: u64) -> Result<ComponentGroupReport, GroupError> {
    component_group_with(gens, seed, &WitnessSearch::default())
}

/// Solves every one of the m^k strata, then verifies and classifies the
/// subgroup of witnessed twists. Stratum `i` (lexicographic index) draws its
/// random trials from ChaCha8 seeded with `seed` on stream `i`, so the result
/// does not depend on scheduling.
pub fn component_group_with(
    gens: &GeneratorSet,
    seed: u64,
    search: &WitnessSearch,
) -> Result<ComponentGroupReport, GroupError> {
    let twists = gens.twists();
    let strata = twists
        .par_iter()
        .enumerate()
        .map(|(i, t)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            solve_stratum(gens, t, search, &mut rng)
        })
        .collect::<Result<Vec<_>, _>>()?;

    let m = gens.m();
    if strata[0].status() != StratumStatus::Witnessed {
        return Err(GroupError::MissingIdentity);
    }
    let nonempty: Vec<TwistTuple> = strata
        .iter()
        .filter(|s| s.status() == StratumStatus::Witnessed)
        .map(|s| s.twist.clone())
        .collect();
    let lookup: HashSet<&TwistTuple> = nonempty.iter().collect();
    for a in &nonempty {
        for b in &nonempty {
            if !lookup.contains(&a.add(b, m)) {
                return Err(GroupError::ClosureViolation(a.clone(), b.clone()));
            }
        }
    }

    let (invariant_factors, subgroup_generators) = subgroup_structure(m, &nonempty, gens.len());
    let expected: u64 = invariant_factors.iter().product();
    if expected != nonempty.len() as u64 {
        return Err(GroupError::OrderMismatch {
            found: nonempty.len(),
            expected,
        });
    }
    Ok(ComponentGroupReport {
        n: gens.n(),
        field_order: gens.field().order(),
        m,
        centralizer_dim: strata[0].dim(),
        iso_label: classify_label(&invariant_factors),
        strata,
        nonempty_twists: nonempty,
        subgroup_generators,
        invariant_factors,
    })
}

/// Invariant factors and a matching minimal generating set of the subgroup
/// of (ℤ/mℤ)^k spanned by `elements`.
///
/// With L the lattice spanned by the elements and mℤ^k, write
/// L = P·diag(d)·ℤ^k (Smith form). Then H = L/mℤ^k ≅ ⊕ ℤ/(m/d_i), generated
/// by the columns d_i·P_i.
pub fn subgroup_structure(
    m: u32,
    elements: &[TwistTuple],
    k: usize,
) -> (Vec<u64>, Vec<TwistTuple>) {
    let m = i64::from(m);
    let spanning = greedy_generators(m, elements, k);
    let mut a: Vec<Vec<i64>> = vec![Vec::new(); k];
    for g in &spanning {
        for (r, &e) in g.iter().enumerate() {
            a[r].push(e);
        }
    }
    for (r, row) in a.iter_mut().enumerate() {
        row.extend((0..k).map(|c| if c == r { m } else { 0 }));
    }
    let (d, p_inv) = smith::smith(a);
    let mut factors = Vec::new();
    let mut generators = Vec::new();
    for i in (0..k).rev() {
        let order = m / d[i];
        if order > 1 {
            factors.push(order as u64);
            generators.push(TwistTuple(
                (0..k)
                    .map(|r| (d[i] * p_inv[r][i]).rem_euclid(m) as u32)
                    .collect(),
            ));
        }
    }
    (factors, generators)
}

/// A small spanning subset, picked in input order.
fn greedy_generators(m: i64, elements: &[TwistTuple], k: usize) -> Vec<Vec<i64>> {
    let mut span: BTreeSet<Vec<i64>> = BTreeSet::from([vec![0; k]]);
    let mut gens = Vec::new();
    for t in elements {
        let v: Vec<i64> = t.0.iter().map(|&e| i64::from(e)).collect();
        if span.contains(&v) {
            continue;
        }
        // close the span under adding the new generator
        let mut frontier: Vec<Vec<i64>> = span.iter().cloned().collect();
        while let Some(x) = frontier.pop() {
            let y: Vec<i64> = x.iter().zip(&v).map(|(a, b)| (a + b) % m).collect();
            if span.insert(y.clone()) {
                frontier.push(y);
            }
        }
        gens.push(v);
    }
    gens
}

/// `trivial`, `Z/3Z`, `Z/2Z x Z/2Z`, …
pub fn classify_label(invariant_factors: &[u64]) -> String {
    if invariant_factors.is_empty() {
        return "trivial".to_string();
    }
    invariant_factors
        .iter()
        .map(|d| format!("Z/{d}Z"))
        .collect::<Vec<_>>()
        .join(" x ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclofield::CycField;

    fn t(v: &[u32]) -> TwistTuple {
        TwistTuple(v.to_vec())
    }

    #[test]
    fn labels() {
        assert_eq!(classify_label(&[]), "trivial");
        assert_eq!(classify_label(&[3]), "Z/3Z");
        assert_eq!(classify_label(&[2, 2]), "Z/2Z x Z/2Z");
    }

    #[test]
    fn structure_of_small_subgroups() {
        let (f, g) = subgroup_structure(3, &[t(&[0])], 1);
        assert!(f.is_empty() && g.is_empty());
        let (f, g) = subgroup_structure(3, &[t(&[0]), t(&[1]), t(&[2])], 1);
        assert_eq!(f, vec![3]);
        assert_eq!(g.len(), 1);

        let all: Vec<TwistTuple> = (0..3)
            .flat_map(|a| (0..3).map(move |b| t(&[a, b])))
            .collect();
        let (f, _) = subgroup_structure(3, &all, 2);
        assert_eq!(f, vec![3, 3]);

        let (f, g) = subgroup_structure(6, &[t(&[0, 0]), t(&[2, 0]), t(&[4, 0]), t(&[0, 3])], 2);
        // ⟨(2,0)⟩ ⊕ ⟨(0,3)⟩ ≅ Z/3 ⊕ Z/2 ≅ Z/6
        assert_eq!(f, vec![6]);
        assert_eq!(g.len(), 1);

        let (f, _) = subgroup_structure(4, &[t(&[0, 0]), t(&[2, 0]), t(&[0, 2]), t(&[2, 2])], 2);
        assert_eq!(f, vec![2, 2]);
    }

    #[test]
    fn cube_root_diagonal_is_z3() {
        let f = CycField::new(3).unwrap();
        let z = f.gen();
        let a = Matrix::diag(&f, &[z.clone(), z.pow(2), f.one()]).unwrap();
        let gens = GeneratorSet::new(vec![a]).unwrap();
        let r = component_group(&gens, 0).unwrap();
        assert_eq!(r.iso_label, "Z/3Z");
        assert_eq!(r.nonempty_twists, vec![t(&[0]), t(&[1]), t(&[2])]);
        assert_eq!(r.centralizer_dim, 3);
        assert_eq!(r.invariant_factors, vec![3]);
    }

    #[test]
    fn generic_diagonal_is_trivial() {
        let f = CycField::new(3).unwrap();
        let a = Matrix::from_ints(&f, &[[2, 0, 0], [0, 3, 0], [0, 0, 1]]);
        let r = component_group(&GeneratorSet::new(vec![a]).unwrap(), 0).unwrap();
        assert_eq!(r.iso_label, "trivial");
        assert_eq!(r.centralizer_dim, 3);
        assert_eq!(r.nonempty_twists, vec![t(&[0])]);
    }

    #[test]
    fn heisenberg_pair_is_z3_squared() {
        let f = CycField::new(3).unwrap();
        let z = f.gen();
        let clock = Matrix::diag(&f, &[f.one(), z.clone(), z.pow(2)]).unwrap();
        let shift = Matrix::from_ints(&f, &[[0, 1, 0], [0, 0, 1], [1, 0, 0]]);
        let r = component_group(&GeneratorSet::new(vec![clock, shift]).unwrap(), 0).unwrap();
        assert_eq!(r.iso_label, "Z/3Z x Z/3Z");
        assert_eq!(r.centralizer_dim, 1);
        assert_eq!(r.subgroup_generators.len(), 2);
    }
}
