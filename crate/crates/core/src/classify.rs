//! A certificate-producing rule engine for the factorization-property lattice.
//!
//! Family rules fire first, in a fixed order, and the first rule to decide a
//! property wins. Chain propagation then runs forward and contrapositively
//! to a fixpoint. Two rules disagreeing is an engine bug and surfaces as
//! [`ClassifyError::Contradiction`].

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;
use thiserror::Error;

use crate::closure::{conductor, is_root_closed_seeded};
use crate::exact::Rat;
use crate::factor::{atoms, member_bounded, AtomCount, DEFAULT_DEPTH};
use crate::model::{meta, MonoidExpr};
use crate::numsg::{Factorization, NumericalMonoid, NumsgError};
use crate::Tri;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Property {
    ACCP,
    Antimatter,
    Atomic,
    BFM,
    FFM,
    FinitelyGenerated,
    HFM,
    Increasing,
    OHFM,
    Pruefer,
    RootClosed,
    UFM,
}

impl Property {
    /// Every property, sorted by name.
    pub const ALL: [Property; 12] = [
        Property::ACCP,
        Property::Antimatter,
        Property::Atomic,
        Property::BFM,
        Property::FFM,
        Property::FinitelyGenerated,
        Property::HFM,
        Property::Increasing,
        Property::OHFM,
        Property::Pruefer,
        Property::RootClosed,
        Property::UFM,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::ACCP => "ACCP",
            Property::Antimatter => "Antimatter",
            Property::Atomic => "Atomic",
            Property::BFM => "BFM",
            Property::FFM => "FFM",
            Property::FinitelyGenerated => "FinitelyGenerated",
            Property::HFM => "HFM",
            Property::Increasing => "Increasing",
            Property::OHFM => "OHFM",
            Property::Pruefer => "Pruefer",
            Property::RootClosed => "RootClosed",
            Property::UFM => "UFM",
        }
    }

    pub fn from_name(s: &str) -> Option<Property> {
        Property::ALL.into_iter().find(|p| p.name() == s)
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Rule identifiers, one per fact the engine knows how to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    /// Finite generation: atomic with finitely many atoms.
    FinitelyGenerated,
    /// Increasing generating sequences.
    Increasing,
    /// Nonempty conductor.
    Conductor,
    /// 0 is not a limit point.
    BoundedFactorization,
    /// Multiplicative cyclic semirings.
    CyclicSemiring,
    /// Submonoids of the prime-reciprocal monoid.
    PrimeReciprocal,
    /// Half-factoriality by atom count.
    HalfFactorial,
    /// Other-half-factoriality by atom count.
    OtherHalfFactorial,
    Antimatter,
    RootClosed,
    DenseTail,
    /// The increasing-denominator family.
    IncreasingDenom,
    /// Prime reciprocals joined with the tail at 1.
    UnionPrTail,
    Chain,
}

impl Rule {
    pub const ALL: [Rule; 14] = [
        Rule::FinitelyGenerated,
        Rule::Increasing,
        Rule::Conductor,
        Rule::BoundedFactorization,
        Rule::CyclicSemiring,
        Rule::PrimeReciprocal,
        Rule::HalfFactorial,
        Rule::OtherHalfFactorial,
        Rule::Antimatter,
        Rule::RootClosed,
        Rule::DenseTail,
        Rule::IncreasingDenom,
        Rule::UnionPrTail,
        Rule::Chain,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Rule::FinitelyGenerated => "R-FG",
            Rule::Increasing => "R-INC",
            Rule::Conductor => "R-COND",
            Rule::BoundedFactorization => "R-BF",
            Rule::CyclicSemiring => "R-SR",
            Rule::PrimeReciprocal => "R-PR",
            Rule::HalfFactorial => "R-HF",
            Rule::OtherHalfFactorial => "R-OHF",
            Rule::Antimatter => "R-AM",
            Rule::RootClosed => "R-RC",
            Rule::DenseTail => "R-DT",
            Rule::IncreasingDenom => "R-ID",
            Rule::UnionPrTail => "R-UNION-PR-T",
            Rule::Chain => "R-CHAIN",
        }
    }

    pub fn from_id(s: &str) -> Option<Rule> {
        Rule::ALL.into_iter().find(|r| r.id() == s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub rule: Rule,
    pub text: String,
}

impl Certificate {
    pub fn new(rule: Rule, text: &str) -> Certificate {
        Certificate {
            rule,
            text: text.to_string(),
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.rule.id(), self.text)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyVerdict {
    pub property: Property,
    pub holds: Tri,
    /// Present exactly when `holds` is known.
    pub certificate: Option<Certificate>,
}

impl PropertyVerdict {
    pub fn unknown(property: Property) -> PropertyVerdict {
        PropertyVerdict {
            property,
            holds: Tri::Unknown,
            certificate: None,
        }
    }
}

impl fmt::Display for PropertyVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.property, self.holds)?;
        if let Some(c) = &self.certificate {
            write!(f, " ({c})")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("rules disagree on {property}: {first} versus {second}")]
    Contradiction {
        property: Property,
        first: String,
        second: String,
    },
}

/// Implications `(P = a) ⇒ (Q = b)` used by chain propagation.
pub const IMPLICATIONS: [(Property, bool, Property, bool); 18] = {
    use Property::*;
    [
        (UFM, true, HFM, true),
        (UFM, true, FFM, true),
        (UFM, true, OHFM, true),
        (HFM, true, BFM, true),
        (FFM, true, BFM, true),
        (BFM, true, ACCP, true),
        (ACCP, true, Atomic, true),
        (OHFM, true, Atomic, true),
        (HFM, true, Atomic, true),
        (FinitelyGenerated, true, FFM, true),
        (FinitelyGenerated, true, Increasing, true),
        (Increasing, true, FFM, true),
        (Increasing, true, Atomic, true),
        (Antimatter, true, Atomic, false),
        (RootClosed, true, Pruefer, true),
        (Pruefer, true, RootClosed, true),
        (RootClosed, false, Pruefer, false),
        (Pruefer, false, RootClosed, false),
    ]
};

struct Engine {
    known: BTreeMap<Property, (bool, Certificate)>,
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl Engine {
    fn get(&self, p: Property) -> Option<bool> {
        self.known.get(&p).map(|(b, _)| *b)
    }

    fn set(
        &mut self,
        p: Property,
        holds: bool,
        rule: Rule,
        text: &str,
    ) -> Result<bool, ClassifyError> {
        match self.known.get(&p) {
            Some((b, _)) if *b == holds => Ok(false),
            Some((b, c)) => Err(ClassifyError::Contradiction {
                property: p,
                first: format!("{} by {c}", yes_no(*b)),
                second: format!("{} by {}: {text}", yes_no(holds), rule.id()),
            }),
            None => {
                self.known.insert(p, (holds, Certificate::new(rule, text)));
                Ok(true)
            }
        }
    }

    fn propagate(&mut self) -> Result<(), ClassifyError> {
        loop {
            let mut changed = false;
            for (p, a, q, b) in IMPLICATIONS {
                if self.get(p) == Some(a) {
                    let text = format!("{p} = {} implies {q} = {}", yes_no(a), yes_no(b));
                    changed |= self.set(q, b, Rule::Chain, &text)?;
                }
                if self.get(q) == Some(!b) {
                    let text = format!(
                        "{q} = {}, and {p} = {} would force {q} = {}",
                        yes_no(!b),
                        yes_no(a),
                        yes_no(b)
                    );
                    changed |= self.set(p, !a, Rule::Chain, &text)?;
                }
            }
            // a nontrivial atomic monoid has atoms
            if self.get(Property::Atomic) == Some(true) {
                changed |= self.set(
                    Property::Antimatter,
                    false,
                    Rule::Chain,
                    "atomic and nontrivial, so atoms exist",
                )?;
            }
            if !changed {
                return Ok(());
            }
        }
    }

    fn verdicts(self) -> Vec<PropertyVerdict> {
        Property::ALL
            .into_iter()
            .map(|p| match self.known.get(&p) {
                Some((b, c)) => PropertyVerdict {
                    property: p,
                    holds: Tri::from_bool(*b),
                    certificate: Some(c.clone()),
                },
                None => PropertyVerdict::unknown(p),
            })
            .collect()
    }
}

/// Whether every part of `m` lies inside `<1/p | p prime>`, and whether that
/// monoid itself is one of the parts.
fn prime_reciprocal_parts(m: &MonoidExpr) -> (bool, bool) {
    let pr = MonoidExpr::PrimeReciprocal;
    let mut has_pr = false;
    for part in m.union_parts() {
        let inside = match part {
            MonoidExpr::PrimeReciprocal => {
                has_pr = true;
                true
            }
            MonoidExpr::Scale(c, inner) => c.is_integer() && **inner == pr,
            MonoidExpr::FiniteGen(g) => g
                .iter()
                .all(|x| member_bounded(&pr, x, DEFAULT_DEPTH).is_yes()),
            _ => false,
        };
        if !inside {
            return (false, false);
        }
    }
    (true, has_pr)
}

/// One verdict per property, sorted by property name.
pub fn classify(m: &MonoidExpr) -> Result<Vec<PropertyVerdict>, ClassifyError> {
    classify_seeded(m, 0)
}

/// [`classify`] with the seed used by sampled checks.
pub fn classify_seeded(m: &MonoidExpr, seed: u64) -> Result<Vec<PropertyVerdict>, ClassifyError> {
    use Property::*;
    // scaling is an isomorphism
    let (_, m) = m.unscaled();
    let mut e = Engine {
        known: BTreeMap::new(),
    };
    let fg = m.finite_generators().is_some();
    let info = meta(m);
    let atom_desc = atoms(m);
    let count = atom_desc.count();

    // R-FG
    if fg {
        e.set(
            FinitelyGenerated,
            true,
            Rule::FinitelyGenerated,
            "generated by finitely many elements",
        )?;
        e.set(
            Atomic,
            true,
            Rule::FinitelyGenerated,
            "finitely generated, hence atomic with finitely many atoms",
        )?;
        e.set(
            Increasing,
            true,
            Rule::FinitelyGenerated,
            "a finite generating set lists as an increasing sequence",
        )?;
        e.set(
            FFM,
            true,
            Rule::FinitelyGenerated,
            "finitely generated monoids have finitely many factorizations per element",
        )?;
    } else {
        e.set(
            FinitelyGenerated,
            false,
            Rule::FinitelyGenerated,
            "no finite generating set",
        )?;
        if let AtomCount::Finite(_) = count {
            e.set(
                Atomic,
                false,
                Rule::FinitelyGenerated,
                "finitely many atoms yet not finitely generated",
            )?;
        }
    }

    // R-INC
    if info.increasing {
        let text = "generated by an increasing sequence";
        e.set(Increasing, true, Rule::Increasing, text)?;
        e.set(
            FFM,
            true,
            Rule::Increasing,
            "increasing Puiseux monoids are FFMs",
        )?;
        e.set(
            Atomic,
            true,
            Rule::Increasing,
            "increasing Puiseux monoids are atomic",
        )?;
    } else if info.zero_limit_point {
        e.set(
            Increasing,
            false,
            Rule::Increasing,
            "0 is a limit point, so no increasing sequence generates M",
        )?;
    }

    // R-COND
    if conductor(m).is_nonempty() == Tri::Yes {
        if info.zero_limit_point {
            let text = "nonempty conductor with 0 a limit point: neither BFM nor ACCP";
            e.set(BFM, false, Rule::Conductor, text)?;
            e.set(ACCP, false, Rule::Conductor, text)?;
        } else {
            let text = "nonempty conductor with 0 not a limit point: BFM and ACCP";
            e.set(BFM, true, Rule::Conductor, text)?;
            e.set(ACCP, true, Rule::Conductor, text)?;
        }
    }

    // R-BF
    if !info.zero_limit_point {
        e.set(
            BFM,
            true,
            Rule::BoundedFactorization,
            "0 is not a limit point, so lengths are bounded",
        )?;
    }

    // R-SR
    if let MonoidExpr::CyclicSemiring(r) = m {
        if !r.is_integer() && r.numer().is_one() {
            e.set(
                Antimatter,
                true,
                Rule::CyclicSemiring,
                "S(1/b) has no atoms",
            )?;
            e.set(Atomic, false, Rule::CyclicSemiring, "S(1/b) has no atoms")?;
        } else if r < &Rat::one() {
            let text = "S(r) with r < 1 and numerator above 1 is atomic with atoms r^n";
            e.set(Atomic, true, Rule::CyclicSemiring, text)?;
            e.set(
                ACCP,
                false,
                Rule::CyclicSemiring,
                "S(r) with r < 1 and numerator above 1 fails the ACCP",
            )?;
        }
    }

    // R-PR
    let (inside_pr, has_pr) = prime_reciprocal_parts(m);
    if inside_pr {
        e.set(
            ACCP,
            true,
            Rule::PrimeReciprocal,
            "submonoids of <1/p | p prime> satisfy the ACCP",
        )?;
        if has_pr {
            e.set(
                BFM,
                false,
                Rule::PrimeReciprocal,
                "every prime p is a factorization length of 1",
            )?;
        }
    }

    // R-HF
    match count {
        AtomCount::Infinite | AtomCount::Finite(2..) => {
            let text = "two atoms a1 < a2 give n(a1)n(a2) factorizations of different lengths";
            e.set(HFM, false, Rule::HalfFactorial, text)?;
            e.set(UFM, false, Rule::HalfFactorial, text)?;
        }
        AtomCount::Finite(1) if e.get(Atomic) == Some(true) => {
            let text = "atomic with a single atom, hence a copy of N0";
            e.set(HFM, true, Rule::HalfFactorial, text)?;
            e.set(UFM, true, Rule::HalfFactorial, text)?;
        }
        _ => {}
    }

    // R-OHF
    match count {
        AtomCount::Infinite | AtomCount::Finite(3..) => {
            e.set(
                OHFM,
                false,
                Rule::OtherHalfFactorial,
                "three or more atoms allow distinct factorizations of equal length",
            )?;
        }
        AtomCount::Finite(_) if e.get(Atomic) == Some(true) => {
            e.set(
                OHFM,
                true,
                Rule::OtherHalfFactorial,
                "atomic with at most two atoms",
            )?;
        }
        _ => {}
    }

    // R-AM
    match atom_desc.is_nonempty() {
        Tri::No => {
            e.set(Antimatter, true, Rule::Antimatter, "no atoms")?;
            e.set(Atomic, false, Rule::Antimatter, "nontrivial without atoms")?;
        }
        Tri::Yes => {
            e.set(Antimatter, false, Rule::Antimatter, "has an atom")?;
        }
        Tri::Unknown => {}
    }

    // R-RC
    let rc = is_root_closed_seeded(m, seed);
    if let (Some(b), Some(c)) = (rc.holds.to_bool(), rc.certificate) {
        e.set(RootClosed, b, Rule::RootClosed, &c.text)?;
        e.set(
            Pruefer,
            b,
            Rule::RootClosed,
            "Pruefer exactly when root-closed",
        )?;
    }

    // R-DT
    if let MonoidExpr::DenseTail(_) = m {
        e.set(
            FFM,
            false,
            Rule::DenseTail,
            "elements above 2r have infinitely many factorizations",
        )?;
        e.set(
            Increasing,
            false,
            Rule::DenseTail,
            "the atoms [r, 2r) are not well ordered",
        )?;
    }

    // R-ID
    if let MonoidExpr::IncreasingDenom = m {
        e.set(
            FFM,
            true,
            Rule::IncreasingDenom,
            "each element has finitely many factorizations",
        )?;
        e.set(
            Increasing,
            false,
            Rule::IncreasingDenom,
            "no increasing sequence generates M",
        )?;
    }

    // R-UNION-PR-T
    if *m
        == MonoidExpr::union(
            MonoidExpr::PrimeReciprocal,
            MonoidExpr::DenseTail(Rat::one()),
        )
    {
        e.set(
            Atomic,
            true,
            Rule::UnionPrTail,
            "atoms 1/p below 1 and 1 itself generate M",
        )?;
        e.set(
            ACCP,
            false,
            Rule::UnionPrTail,
            "an ascending chain of principal ideals below the tail never stabilizes",
        )?;
    }

    e.propagate()?;
    Ok(e.verdicts())
}

/// Looks up one property in a verdict vector.
pub fn verdict_of(verdicts: &[PropertyVerdict], p: Property) -> Tri {
    verdicts
        .iter()
        .find(|v| v.property == p)
        .map_or(Tri::Unknown, |v| v.holds)
}

/// A monoid separating one implication of the chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainWitness {
    pub monoid: MonoidExpr,
    pub holds: Property,
    pub fails: Property,
}

/// Four monoids showing that HFM ⇒ FFM ⇒ BFM ⇒ ACCP ⇒ atomic do not reverse:
/// atomic but not ACCP, ACCP but not BFM, BFM but not FFM, FFM but not HFM.
/// Each row is re-checked by running [`classify`].
pub fn witness_chain() -> Result<Vec<ChainWitness>, ClassifyError> {
    use Property::*;
    let rows = [
        (
            MonoidExpr::CyclicSemiring(Rat::new(2u32, 3u32).expect("valid")),
            Atomic,
            ACCP,
        ),
        (MonoidExpr::PrimeReciprocal, ACCP, BFM),
        (MonoidExpr::DenseTail(Rat::one()), BFM, FFM),
        (MonoidExpr::PrimeFracIncreasing, FFM, HFM),
    ];
    let mut out = Vec::new();
    for (monoid, holds, fails) in rows {
        let v = classify(&monoid)?;
        if verdict_of(&v, holds) != Tri::Yes || verdict_of(&v, fails) != Tri::No {
            return Err(ClassifyError::Contradiction {
                property: fails,
                first: format!("{monoid} should separate {holds} from {fails}"),
                second: format!(
                    "{holds} = {}, {fails} = {}",
                    verdict_of(&v, holds),
                    verdict_of(&v, fails)
                ),
            });
        }
        out.push(ChainWitness {
            monoid,
            holds,
            fails,
        });
    }
    Ok(out)
}

/// An element with two factorizations of different lengths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HfmCounterexample {
    pub x: u64,
    pub z1: Factorization,
    pub z2: Factorization,
}

/// For the two smallest atoms `a1 < a2`: `x = a1·a2` as `a2` copies of `a1`
/// and as `a1` copies of `a2`.
pub fn hfm_counterexample(nm: &NumericalMonoid) -> Result<HfmCounterexample, NumsgError> {
    let gens = nm.gens();
    if gens.len() < 2 {
        return Err(NumsgError::EmbeddingDimension {
            needed: 2,
            got: gens.len(),
        });
    }
    let (a1, a2) = (gens[0], gens[1]);
    let mut z1 = vec![0; gens.len()];
    let mut z2 = vec![0; gens.len()];
    z1[0] = a2;
    z2[1] = a1;
    Ok(HfmCounterexample {
        x: a1 * a2,
        z1: Factorization(z1),
        z2: Factorization(z2),
    })
}
