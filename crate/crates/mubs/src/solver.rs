//! The four-relation trace system and its solution catalog.
//!
//! Fixing five of the eight seed entries (a11, b11, a21, b21, b12)
//! leaves three unknowns (a12, a22, b22). The remaining freedom is cut
//! down by four trace relations; every assignment satisfying them makes
//! all fifteen within-row commutation constraints of the generated
//! table hold, so four relations carry the full system. This module
//! solves the system for a given fixed five, sweeps all 1024 fixed
//! fives into a catalog of distinct tables, and checks both directions
//! of the reduction claim exhaustively.

use std::collections::BTreeMap;
use std::fmt;

use crate::galois::{FieldCtx, FieldElement, GaloisError};
use crate::phase_space::{build_table, commutation_relations, MubTable, SeedParams, TableValidity};

/// The five seed entries held fixed while solving.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FixedFive {
    pub a11: FieldElement,
    pub b11: FieldElement,
    pub a21: FieldElement,
    pub b21: FieldElement,
    pub b12: FieldElement,
}

impl FixedFive {
    pub fn new(
        a11: FieldElement,
        b11: FieldElement,
        a21: FieldElement,
        b21: FieldElement,
        b12: FieldElement,
    ) -> Result<Self, GaloisError> {
        let all = [a11, b11, a21, b21, b12];
        if all.iter().any(|e| e.ctx() != FieldCtx::gf4()) {
            return Err(GaloisError::ContextMismatch);
        }
        Ok(FixedFive {
            a11,
            b11,
            a21,
            b21,
            b12,
        })
    }

    /// The reference parameters: a11=u2, b11=u, a21=u, b21=u, b12=u2.
    pub fn reference() -> Self {
        let ctx = FieldCtx::gf4();
        let u = ctx.x();
        let u2 = u.square();
        FixedFive {
            a11: u2,
            b11: u,
            a21: u,
            b21: u,
            b12: u2,
        }
    }

    /// Parses "a11=u2,b11=u,a21=u,b21=u,b12=u2"; every entry must
    /// appear exactly once, in any order.
    pub fn parse(s: &str) -> Result<Self, GaloisError> {
        let ctx = FieldCtx::gf4();
        let mut slots: [Option<FieldElement>; 5] = [None; 5];
        const KEYS: [&str; 5] = ["a11", "b11", "a21", "b21", "b12"];
        for part in s.split(',') {
            let (key, val) = part
                .split_once('=')
                .ok_or_else(|| GaloisError::BadElement(part.to_owned()))?;
            let idx = KEYS
                .iter()
                .position(|&k| k == key.trim())
                .ok_or_else(|| GaloisError::BadElement(key.to_owned()))?;
            if slots[idx].is_some() {
                return Err(GaloisError::BadElement(part.to_owned()));
            }
            slots[idx] = Some(ctx.parse_element(val.trim())?);
        }
        match slots {
            [Some(a11), Some(b11), Some(a21), Some(b21), Some(b12)] => {
                FixedFive::new(a11, b11, a21, b21, b12)
            }
            _ => Err(GaloisError::BadElement(s.to_owned())),
        }
    }

    pub fn with_unknowns(&self, triple: SolutionTriple) -> SeedParams {
        SeedParams::new(
            self.a11, self.b11, triple.a12, self.b12, self.a21, self.b21, triple.a22, triple.b22,
        )
        .expect("fixed five and triple share the GF(4) context")
    }
}

impl fmt::Display for FixedFive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "a11={} b11={} a21={} b21={} b12={}",
            self.a11, self.b11, self.a21, self.b21, self.b12
        )
    }
}

/// The three unknowns of the system. Derived ordering is the
/// lexicographic (a12, a22, b22) order used for solution labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct SolutionTriple {
    pub a12: FieldElement,
    pub a22: FieldElement,
    pub b22: FieldElement,
}

impl fmt::Display for SolutionTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a12={} a22={} b22={}", self.a12, self.a22, self.b22)
    }
}

/// One solution of the system: the triple, the full seed assignment it
/// induces, the generated table, and that table's validity flags.
#[derive(Debug, Clone)]
pub struct Solution {
    pub label: String,
    pub triple: SolutionTriple,
    pub seeds: SeedParams,
    pub table: MubTable,
    pub validity: TableValidity,
}

/// Labels solutions by rank: A..Z, then AA, AB, ...
pub fn solution_label(rank: usize) -> String {
    let mut n = rank + 1;
    let mut out = Vec::new();
    while n > 0 {
        n -= 1;
        out.push(b'A' + (n % 26) as u8);
        n /= 26;
    }
    out.reverse();
    String::from_utf8(out).expect("label bytes are ASCII uppercase")
}

/// The four trace relations of the system, evaluated on a full seed
/// assignment. In reading order:
///
/// 1. tr(a11 b12) = tr(a12 b11)
/// 2. tr(a21 b22) = tr(a22 b21)
/// 3. tr(a11 b22 + a21 b12) = tr(a12 b21 + a22 b11)
/// 4. tr(a21 b11 + a21 b12 + a12 b22) = tr(a22 b12 + a11 b21 + a12 b21)
pub fn system_relations(seeds: &SeedParams) -> [bool; 4] {
    let SeedParams {
        a11,
        b11,
        a12,
        b12,
        a21,
        b21,
        a22,
        b22,
    } = *seeds;
    let tr = |e: FieldElement| e.trace_bit();
    [
        tr(a11 * b12) == tr(a12 * b11),
        tr(a21 * b22) == tr(a22 * b21),
        tr(a11 * b22 + a21 * b12) == tr(a12 * b21 + a22 * b11),
        tr(a21 * b11 + a21 * b12 + a12 * b22) == tr(a22 * b12 + a11 * b21 + a12 * b21),
    ]
}

/// Indices (1-based, within the fifteen-relation list) of the four
/// generating relations: the (1,2) pairs of rows one through four.
pub const GENERATOR_RELATIONS: [usize; 4] = [1, 4, 7, 10];

/// Solves the system for one fixed five by sweeping the 64 candidate
/// triples in lexicographic order. Solutions are labeled by rank.
pub fn solve_system(fixed: &FixedFive) -> Vec<Solution> {
    let ctx = FieldCtx::gf4();
    let mut out = Vec::new();
    for a12 in ctx.elements() {
        for a22 in ctx.elements() {
            for b22 in ctx.elements() {
                let triple = SolutionTriple { a12, a22, b22 };
                let seeds = fixed.with_unknowns(triple);
                if system_relations(&seeds).iter().all(|&r| r) {
                    let table = build_table(&seeds);
                    out.push(Solution {
                        label: solution_label(out.len()),
                        triple,
                        seeds,
                        table,
                        validity: table.validity(),
                    });
                }
            }
        }
    }
    out
}

/// A seed assignment showing that one generating relation is not
/// implied by the other three: it satisfies the kept three but violates
/// the listed relations (1-based indices into the fifteen).
#[derive(Debug, Clone)]
pub struct MinimalityWitness {
    pub dropped: usize,
    pub seeds: SeedParams,
    pub violated: Vec<usize>,
}

/// Result of the exhaustive independence sweep over all 65536 seed
/// assignments.
#[derive(Debug, Clone)]
pub struct IndependenceReport {
    pub assignments_checked: usize,
    /// Whether the four generating relations imply all fifteen.
    pub implication_holds: bool,
    /// For each generating relation, the lexicographically first
    /// assignment proving it independent of the other three.
    pub witnesses: Vec<MinimalityWitness>,
}

/// Checks that the four generating relations imply all fifteen and
/// that no three of them do, by direct enumeration.
pub fn independence_check() -> IndependenceReport {
    let mut implication_holds = true;
    let mut witnesses: Vec<MinimalityWitness> = Vec::new();
    let mut found = [false; 4];
    for seeds in SeedParams::sweep() {
        let rel = commutation_relations(&seeds);
        let gens: Vec<bool> = GENERATOR_RELATIONS.iter().map(|&k| rel[k - 1]).collect();
        let all_hold = rel.iter().all(|&r| r);
        if gens.iter().all(|&g| g) && !all_hold {
            implication_holds = false;
        }
        if !all_hold {
            for drop in 0..4 {
                if found[drop] {
                    continue;
                }
                let kept = (0..4).filter(|&k| k != drop).all(|k| gens[k]);
                if kept {
                    found[drop] = true;
                    witnesses.push(MinimalityWitness {
                        dropped: GENERATOR_RELATIONS[drop],
                        seeds,
                        violated: (1..=15).filter(|&i| !rel[i - 1]).collect(),
                    });
                }
            }
        }
    }
    witnesses.sort_by_key(|w| w.dropped);
    IndependenceReport {
        assignments_checked: 1 << 16,
        implication_holds,
        witnesses,
    }
}

/// Global statistics from sweeping every fixed five.
#[derive(Debug, Clone)]
pub struct Catalog {
    /// Number of fixed fives swept: 4^5.
    pub fixed_count: usize,
    /// Assignments satisfying the system, summed over all fixed fives.
    pub total_solutions: usize,
    /// Solutions whose table also partitions the nonzero points.
    pub valid_tables: usize,
    pub invalid_tables: usize,
    /// solutions-per-fixed-five -> number of fixed fives with that count
    pub histogram: BTreeMap<usize, usize>,
    /// Distinct canonical forms over all solutions.
    pub distinct_tables: usize,
    pub distinct_valid_tables: usize,
    /// The distinct valid tables, canonicalized and sorted.
    pub valid_canonical: Vec<MubTable>,
}

/// Sweeps all 1024 fixed fives and 64 triples each, cataloging every
/// solution of the system.
pub fn scan_all() -> Catalog {
    let ctx = FieldCtx::gf4();
    let mut histogram = BTreeMap::new();
    let mut total_solutions = 0;
    let mut valid_tables = 0;
    let mut all_canonical = std::collections::BTreeSet::new();
    let mut valid_canonical = std::collections::BTreeSet::new();

    let elems: Vec<FieldElement> = ctx.elements().collect();
    let mut fixed_count = 0;
    for &a11 in &elems {
        for &b11 in &elems {
            for &a21 in &elems {
                for &b21 in &elems {
                    for &b12 in &elems {
                        fixed_count += 1;
                        let fixed = FixedFive {
                            a11,
                            b11,
                            a21,
                            b21,
                            b12,
                        };
                        let sols = solve_system(&fixed);
                        *histogram.entry(sols.len()).or_insert(0) += 1;
                        total_solutions += sols.len();
                        for sol in sols {
                            let canon = sol.table.canonicalize();
                            all_canonical.insert(canon);
                            if sol.validity.is_valid() {
                                valid_tables += 1;
                                valid_canonical.insert(canon);
                            }
                        }
                    }
                }
            }
        }
    }
    Catalog {
        fixed_count,
        total_solutions,
        valid_tables,
        invalid_tables: total_solutions - valid_tables,
        histogram,
        distinct_tables: all_canonical.len(),
        distinct_valid_tables: valid_canonical.len(),
        valid_canonical: valid_canonical.into_iter().collect(),
    }
}
