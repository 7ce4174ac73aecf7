//! Finite generator presentations for the tempered, non-supercuspidal
//! L-parameter images of SL₃.
//!
//! Each continuous image is replaced by a few of its elements: exactly the
//! matrices whose centralizer computation already pins the answer down.
//! [`stabilize`] lets callers push further members of a family and confirm
//! nothing moves.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::compgroup::{component_group, GroupError};
use crate::cyclofield::{CycField, CycNum};
use crate::exactla::Matrix;
use crate::twistcent::{CentralizerError, GeneratorSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("unknown family '{0}'")]
    UnknownFamily(String),
    #[error("family {family} has no parameter '{param}'")]
    UnknownParam { family: FamilyId, param: String },
    #[error("family {family} needs parameter '{param}'")]
    MissingParam {
        family: FamilyId,
        param: &'static str,
    },
    #[error("parameter '{param}' is over Q(zeta_{found}), expected Q(zeta_{expected})")]
    ParamField {
        param: String,
        found: u32,
        expected: u32,
    },
    #[error("family {family}: {condition}")]
    Invariant {
        family: FamilyId,
        condition: &'static str,
    },
    #[error(transparent)]
    Centralizer(#[from] CentralizerError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyId {
    PrincipalSeries,
    Steinberg3,
    DihedralChi,
    TetrahedralChi,
    OctahedralChi,
    Steinberg2Chi,
}

impl FamilyId {
    pub const ALL: [FamilyId; 6] = [
        FamilyId::PrincipalSeries,
        FamilyId::Steinberg3,
        FamilyId::DihedralChi,
        FamilyId::TetrahedralChi,
        FamilyId::OctahedralChi,
        FamilyId::Steinberg2Chi,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FamilyId::PrincipalSeries => "principal-series",
            FamilyId::Steinberg3 => "steinberg3",
            FamilyId::DihedralChi => "dihedral-chi",
            FamilyId::TetrahedralChi => "tetrahedral-chi",
            FamilyId::OctahedralChi => "octahedral-chi",
            FamilyId::Steinberg2Chi => "steinberg2-chi",
        }
    }

    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            FamilyId::PrincipalSeries => &["a1", "a2"],
            FamilyId::Steinberg3 => &[],
            FamilyId::DihedralChi | FamilyId::TetrahedralChi | FamilyId::OctahedralChi => &["c"],
            FamilyId::Steinberg2Chi => &["k"],
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyId {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FamilyId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| FamilyError::UnknownFamily(s.to_string()))
    }
}

/// A family id with its character values, validated on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    id: FamilyId,
    field: CycField,
    params: BTreeMap<String, CycNum>,
    /// Expected component-group label, for regression runs.
    pub expected: Option<String>,
}

impl FamilySpec {
    pub fn new(
        id: FamilyId,
        field: &CycField,
        params: BTreeMap<String, CycNum>,
    ) -> Result<Self, FamilyError> {
        for (name, value) in &params {
            if !id.param_names().contains(&name.as_str()) {
                return Err(FamilyError::UnknownParam {
                    family: id,
                    param: name.clone(),
                });
            }
            if value.field() != field {
                return Err(FamilyError::ParamField {
                    param: name.clone(),
                    found: value.order(),
                    expected: field.order(),
                });
            }
        }
        for &name in id.param_names() {
            if !params.contains_key(name) {
                return Err(FamilyError::MissingParam {
                    family: id,
                    param: name,
                });
            }
        }
        let spec = FamilySpec {
            id,
            field: field.clone(),
            params,
            expected: None,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn principal_series(a1: CycNum, a2: CycNum) -> Result<Self, FamilyError> {
        let field = a1.field().clone();
        Self::new(
            FamilyId::PrincipalSeries,
            &field,
            BTreeMap::from([("a1".to_string(), a1), ("a2".to_string(), a2)]),
        )
    }

    pub fn steinberg3(field: &CycField) -> Self {
        Self::new(FamilyId::Steinberg3, field, BTreeMap::new()).expect("no parameters")
    }

    /// `dihedral-chi`, `tetrahedral-chi` or `octahedral-chi` with character value c.
    pub fn with_chi(id: FamilyId, c: CycNum) -> Result<Self, FamilyError> {
        let field = c.field().clone();
        Self::new(id, &field, BTreeMap::from([("c".to_string(), c)]))
    }

    pub fn steinberg2_chi(k: CycNum) -> Result<Self, FamilyError> {
        let field = k.field().clone();
        Self::new(
            FamilyId::Steinberg2Chi,
            &field,
            BTreeMap::from([("k".to_string(), k)]),
        )
    }

    pub fn id(&self) -> FamilyId {
        self.id
    }

    pub fn field(&self) -> &CycField {
        &self.field
    }

    pub fn params(&self) -> &BTreeMap<String, CycNum> {
        &self.params
    }

    pub fn param(&self, name: &str) -> &CycNum {
        &self.params[name]
    }

    fn validate(&self) -> Result<(), FamilyError> {
        let fail = |condition| {
            Err(FamilyError::Invariant {
                family: self.id,
                condition,
            })
        };
        match self.id {
            FamilyId::PrincipalSeries => {
                let (a1, a2) = (self.param("a1"), self.param("a2"));
                if a1.is_zero() || a2.is_zero() {
                    return fail("a1 and a2 must be nonzero");
                }
                if a1 == a2 || a1.is_one() || a2.is_one() {
                    return fail("a1, a2 and 1 must be pairwise distinct");
                }
            }
            FamilyId::Steinberg3 => {}
            FamilyId::DihedralChi | FamilyId::TetrahedralChi | FamilyId::OctahedralChi => {
                let c = self.param("c");
                if c.is_zero() {
                    return fail("c must be nonzero");
                }
                if c.is_one() {
                    return fail("c must differ from 1");
                }
                let a = if self.id == FamilyId::DihedralChi {
                    1
                } else {
                    2
                };
                if c == &self.field.from_int(a * a) {
                    return fail(
                        "c must differ from a^2 (a = 1 dihedral, a = 2 tetrahedral/octahedral)",
                    );
                }
            }
            FamilyId::Steinberg2Chi => {
                let k = self.param("k");
                if k.is_zero() || k.is_one() {
                    return fail("k must differ from 0 and 1");
                }
            }
        }
        Ok(())
    }
}

/// The finite surrogate generator set of a family, all 3×3 with twists of
/// order 3.
///
/// * principal-series: `diag(a1, a2, 1)`.
/// * steinberg3: Sym² of `diag(2, 1/2)` and of `[[1,1],[1,2]]`.
/// * dihedral-chi: `[[0,1,0],[1,0,0],[0,0,c]]`, `diag(-1, 1, c)`.
/// * tetrahedral-chi and octahedral-chi: `[[0,1,0],[2,0,0],[0,0,c]]`,
///   `[[1,1,0],[0,1,0],[0,0,c]]`. A₄ ⊂ S₄, and the A₄ generators already cut
///   the centralizer down to block scalars, so octahedral shares them.
/// * steinberg2-chi: `diag(2, 1/2, 1)` and the two elementary shears. The
///   character value k only rescales the image, which leaves every stratum
///   unchanged.
pub fn build_family(spec: &FamilySpec) -> Result<GeneratorSet, FamilyError> {
    let f = &spec.field;
    let int = |x: i64| f.from_int(x);
    let gens = match spec.id {
        FamilyId::PrincipalSeries => {
            vec![Matrix::diag(
                f,
                &[spec.param("a1").clone(), spec.param("a2").clone(), f.one()],
            )
            .expect("same field")]
        }
        FamilyId::Steinberg3 => vec![
            sym2(f, [int(2), int(0), int(0), f.from_ratio(1, 2)]),
            sym2(f, [int(1), int(1), int(1), int(2)]),
        ],
        FamilyId::DihedralChi => {
            let c = spec.param("c");
            vec![
                block_with_chi(f, [[0, 1], [1, 0]], c),
                block_with_chi(f, [[-1, 0], [0, 1]], c),
            ]
        }
        FamilyId::TetrahedralChi | FamilyId::OctahedralChi => {
            let c = spec.param("c");
            vec![
                block_with_chi(f, [[0, 1], [2, 0]], c),
                block_with_chi(f, [[1, 1], [0, 1]], c),
            ]
        }
        FamilyId::Steinberg2Chi => vec![
            Matrix::diag(f, &[int(2), f.from_ratio(1, 2), f.one()]).expect("same field"),
            Matrix::from_ints(f, &[[1, 1, 0], [0, 1, 0], [0, 0, 1]]),
            Matrix::from_ints(f, &[[1, 0, 0], [1, 1, 0], [0, 0, 1]]),
        ],
    };
    Ok(GeneratorSet::new(gens)?)
}

/// Symmetric square of `[[a,b],[c,d]]`:
/// `[[a², ab, b²], [2ac, ad+bc, 2bd], [c², cd, d²]]`.
pub fn sym2(field: &CycField, [a, b, c, d]: [CycNum; 4]) -> Matrix {
    let two = field.from_int(2);
    let rows = vec![
        vec![&a * &a, &a * &b, &b * &b],
        vec![
            &two * &(&a * &c),
            &(&a * &d) + &(&b * &c),
            &two * &(&b * &d),
        ],
        vec![&c * &c, &c * &d, &d * &d],
    ];
    Matrix::from_rows(field, rows).expect("3x3 over one field")
}

fn block_with_chi(field: &CycField, block: [[i64; 2]; 2], c: &CycNum) -> Matrix {
    let mut m = Matrix::from_ints(
        field,
        &[
            [block[0][0], block[0][1], 0],
            [block[1][0], block[1][1], 0],
            [0, 0, 0],
        ],
    );
    m.set(2, 2, c.clone());
    m
}

/// Outcome of [`stabilize`].
#[derive(Clone, Debug)]
pub struct Stabilized {
    pub gens: GeneratorSet,
    /// Indices into `extra` of the probes that changed the answer and were kept.
    pub accepted: Vec<usize>,
    pub passes: usize,
}

/// Offers each probe matrix to the generator set in turn. A probe is kept
/// when appending it changes the centralizer dimension or the component
/// group; passes repeat until one keeps nothing. An empty `accepted` list
/// certifies the surrogate is stable against every probe.
pub fn stabilize(
    gens: &GeneratorSet,
    extra: &[Matrix],
    seed: u64,
) -> Result<Stabilized, FamilyError> {
    let profile = |g: &GeneratorSet| -> Result<(usize, Vec<u64>), FamilyError> {
        let r = component_group(g, seed)?;
        Ok((r.centralizer_dim, r.invariant_factors))
    };
    let mut current = gens.clone();
    let mut current_profile = profile(&current)?;
    let mut accepted = Vec::new();
    let mut passes = 0;
    loop {
        passes += 1;
        let mut changed = false;
        for (i, x) in extra.iter().enumerate() {
            if accepted.contains(&i) {
                continue;
            }
            let candidate = current.with_generator(x.clone())?;
            let p = profile(&candidate)?;
            if p != current_profile {
                current = candidate;
                current_profile = p;
                accepted.push(i);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    Ok(Stabilized {
        gens: current,
        accepted,
        passes,
    })
}
