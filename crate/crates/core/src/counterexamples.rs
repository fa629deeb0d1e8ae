//! The four explicit complexes over `local_sq_zero(2, p)`, truncated to
//! windows whose ranks grow geometrically so that interior exactness
//! matches the infinite constructions.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{mk_local_sq_zero, Algebra};
use crate::complexes::{hom_complex, HomComplex, Summand, WindowedComplex};
use crate::error::{Error, Result};
use crate::exactla::FieldMatrix;
use crate::modrep::{direct_sum, Module, Morphism, Side};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    /// Exact complex of injectives that is not Inj-acyclic.
    InjX,
    /// Inj-acyclic complex of injectives that is not exact.
    InjY,
    /// Exact complex of projectives that is not firmly acyclic.
    ProjX,
    /// Firmly acyclic complex of projectives that is not exact.
    ProjY,
}

impl Kind {
    pub const ALL: [Kind; 4] = [Kind::InjX, Kind::InjY, Kind::ProjX, Kind::ProjY];

    pub fn cli_name(self) -> &'static str {
        match self {
            Kind::InjX => "inj-exact-not-total",
            Kind::InjY => "inj-acyclic-not-exact",
            Kind::ProjX => "proj-exact-not-firm",
            Kind::ProjY => "proj-firm-not-exact",
        }
    }

    pub fn is_injective_kind(self) -> bool {
        matches!(self, Kind::InjX | Kind::InjY)
    }

    /// Ranks double toward lower degrees (otherwise they halve).
    fn doubling(self) -> bool {
        matches!(self, Kind::InjX | Kind::ProjY)
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.cli_name())
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Kind> {
        Kind::ALL
            .into_iter()
            .find(|k| k.cli_name() == s || serde_json::to_value(k).ok().and_then(|v| v.as_str().map(|v| v == s)) == Some(true))
            .ok_or_else(|| {
                Error::Parse(format!(
                    "unknown counterexample `{s}` (expected one of {})",
                    Kind::ALL.map(Kind::cli_name).join(", ")
                ))
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleSpec {
    pub kind: Kind,
    pub p: u64,
    pub depth: usize,
    pub base: usize,
}

impl CounterexampleSpec {
    pub fn new(kind: Kind, p: u64, depth: usize, base: usize) -> CounterexampleSpec {
        CounterexampleSpec { kind, p, depth, base }
    }

    /// Ranks for degrees `0 ..= depth`, lowest degree first.
    pub fn ranks(&self) -> Vec<usize> {
        (0..=self.depth)
            .map(|n| {
                let e = if self.kind.doubling() { self.depth - n } else { n };
                self.base << e
            })
            .collect()
    }
}

/// Matrix of the `J`-endomorphism sending `alpha -> a * gamma`,
/// `beta -> b * gamma`, `gamma -> 0`.
fn j_block(algebra: &Arc<Algebra>, a: u64, b: u64) -> FieldMatrix {
    let mut m = FieldMatrix::zeros(algebra.field(), 3, 3);
    m.set(2, 0, a);
    m.set(2, 1, b);
    m
}

/// Matrix of multiplication by `a x + b y` on `R` in the basis `(1, x, y)`.
fn r_block(algebra: &Arc<Algebra>, a: u64, b: u64) -> FieldMatrix {
    let mut m = FieldMatrix::zeros(algebra.field(), 3, 3);
    m.set(1, 0, a);
    m.set(2, 0, b);
    m
}

/// Builds the complex on the window `[0, depth]`. Copies are numbered from
/// 1 in each degree and tagged individually.
pub fn build(spec: &CounterexampleSpec) -> Result<WindowedComplex> {
    if spec.depth < 3 {
        return Err(Error::InvalidParameters(format!("depth must be at least 3, got {}", spec.depth)));
    }
    if spec.base == 0 {
        return Err(Error::InvalidParameters("base must be at least 1".into()));
    }
    if spec.depth > 12 || spec.base.checked_shl(spec.depth as u32).map_or(true, |r| r > 4096) {
        return Err(Error::InvalidParameters("window too large".into()));
    }
    let algebra = mk_local_sq_zero(2, spec.p)?;
    let (unit, label) = if spec.kind.is_injective_kind() {
        (Module::injective_j(&algebra, Side::Left), "J")
    } else {
        (Module::regular(&algebra, Side::Left), "R")
    };
    let ranks = spec.ranks();
    let terms: Vec<Module> = ranks.iter().map(|&r| direct_sum(&vec![unit.clone(); r])).collect();
    let f = algebra.field();
    let mut diffs = Vec::new();
    for n in 1..=spec.depth {
        let (src, tgt) = (ranks[n], ranks[n - 1]);
        let mut m = FieldMatrix::zeros(f, 3 * tgt, 3 * src);
        // (source copy, target copy, block), copies 1-based as in the formulas.
        let mut put = |s: usize, t: usize, block: FieldMatrix| {
            let old = m.block(3 * (t - 1), 3 * (s - 1), 3, 3);
            m.set_block(3 * (t - 1), 3 * (s - 1), &old.add(&block));
        };
        match spec.kind {
            // d(alpha_i) = gamma_{2i-1}, d(beta_i) = gamma_{2i}
            Kind::InjX => {
                for i in 1..=src {
                    put(i, 2 * i - 1, j_block(&algebra, 1, 0));
                    put(i, 2 * i, j_block(&algebra, 0, 1));
                }
            }
            // d(alpha_{2i-1}) = gamma_i = d(beta_{2i}), d(beta_{2i-1}) = 0 = d(alpha_{2i})
            Kind::InjY => {
                for i in 1..=tgt {
                    put(2 * i - 1, i, j_block(&algebra, 1, 0));
                    put(2 * i, i, j_block(&algebra, 0, 1));
                }
            }
            // d(1_{2i-1}) = x_i, d(1_{2i}) = y_i
            Kind::ProjX => {
                for i in 1..=tgt {
                    put(2 * i - 1, i, r_block(&algebra, 1, 0));
                    put(2 * i, i, r_block(&algebra, 0, 1));
                }
            }
            // d(1_i) = x_{2i} + y_{2i-1}
            Kind::ProjY => {
                for i in 1..=src {
                    put(i, 2 * i, r_block(&algebra, 1, 0));
                    put(i, 2 * i - 1, r_block(&algebra, 0, 1));
                }
            }
        }
        diffs.push(Morphism::new(&terms[n], &terms[n - 1], m)?);
    }
    let tags = ranks
        .iter()
        .map(|&r| {
            (0..r)
                .map(|i| Summand {
                    label: format!("{label}{}", i + 1),
                    offset: 3 * i,
                    dim: 3,
                })
                .collect()
        })
        .collect();
    WindowedComplex::new(0, terms, diffs, false)?.with_tags(tags)
}

/// `Hom(S^0(J), X)` for one of the injective counterexamples.
pub fn hom_j_report(spec: &CounterexampleSpec) -> Result<HomComplex> {
    if !spec.kind.is_injective_kind() {
        return Err(Error::Precondition(format!("{} is not a complex of injectives", spec.kind)));
    }
    let x = build(spec)?;
    let j = Module::injective_j(x.algebra(), Side::Left);
    hom_complex(&WindowedComplex::sphere(0, &j), &x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_schedules() {
        assert_eq!(CounterexampleSpec::new(Kind::InjX, 2, 4, 1).ranks(), vec![16, 8, 4, 2, 1]);
        assert_eq!(CounterexampleSpec::new(Kind::ProjX, 2, 3, 2).ranks(), vec![2, 4, 8, 16]);
    }

    #[test]
    fn names_round_trip() {
        for k in Kind::ALL {
            assert_eq!(k.cli_name().parse::<Kind>().unwrap(), k);
        }
        assert_eq!("inj_x".parse::<Kind>().unwrap(), Kind::InjX);
        assert!("nope".parse::<Kind>().is_err());
    }

    #[test]
    fn all_kinds_build_and_exactness_matches() {
        for p in [2, 3, 5] {
            for kind in Kind::ALL {
                let x = build(&CounterexampleSpec::new(kind, p, 4, 1)).unwrap();
                let exact = x.underlying().is_exact();
                assert_eq!(exact, matches!(kind, Kind::InjX | Kind::ProjX), "{kind} p={p}");
            }
        }
    }

    #[test]
    fn witnesses_match_named_classes() {
        let y = build(&CounterexampleSpec::new(Kind::InjY, 3, 4, 1)).unwrap();
        let w = y.underlying().first_failure("X").unwrap();
        let mut expect = vec![0; w.vector.len()];
        expect[0] = 1;
        expect[4] = 2;
        assert_eq!(w.degree, 1);
        assert_eq!(w.vector, expect);
        let y = build(&CounterexampleSpec::new(Kind::ProjY, 2, 4, 1)).unwrap();
        let w = y.underlying().first_failure("X").unwrap();
        let mut expect = vec![0; w.vector.len()];
        expect[1] = 1;
        assert_eq!(w.vector, expect);
    }

    #[test]
    fn hom_j_exactness() {
        let y = hom_j_report(&CounterexampleSpec::new(Kind::InjY, 2, 4, 1)).unwrap();
        assert!(y.complex.is_exact());
        let x = hom_j_report(&CounterexampleSpec::new(Kind::InjX, 2, 4, 1)).unwrap();
        for n in x.complex.faithful_degrees() {
            assert!(x.complex.homology_dim(n).unwrap() > 0);
        }
        assert!(hom_j_report(&CounterexampleSpec::new(Kind::ProjX, 2, 4, 1)).is_err());
    }

    #[test]
    fn small_depth_rejected() {
        assert!(build(&CounterexampleSpec::new(Kind::InjX, 2, 2, 1)).is_err());
        assert!(build(&CounterexampleSpec::new(Kind::InjX, 2, 3, 0)).is_err());
    }
}
