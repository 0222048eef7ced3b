//! The two-qubit phase space GF(4) x GF(4).
//!
//! A nonzero point (a, b) labels the displacement operator
//! T_(a,b) = sigma_x^{a_1} sigma_z^{b_1} (x) sigma_x^{a_2} sigma_z^{b_2},
//! where (a_1, a_2) and (b_1, b_2) are coordinates over the self-dual
//! basis {u, u2}. Two operators commute exactly when
//! tr(a b') = tr(a' b), a symplectic condition this module evaluates
//! without ever touching matrices. Rays through the 15 nonzero points
//! get organized into 5x3 tables: each row is a triple of mutually
//! commuting operators, and a valid table uses every nonzero point
//! exactly once.

use std::fmt;

use crate::galois::{FieldCtx, FieldElement, GaloisError};

/// A phase-space point (a, b) with both coordinates in GF(4).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub a: FieldElement,
    pub b: FieldElement,
}

impl Point {
    pub fn new(a: FieldElement, b: FieldElement) -> Result<Self, GaloisError> {
        if a.ctx() != b.ctx() {
            return Err(GaloisError::ContextMismatch);
        }
        Ok(Point { a, b })
    }

    pub fn origin(ctx: FieldCtx) -> Self {
        Point {
            a: ctx.zero(),
            b: ctx.zero(),
        }
    }

    pub fn is_origin(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl std::ops::Add for Point {
    type Output = Point;
    fn add(self, rhs: Self) -> Point {
        Point {
            a: self.a + rhs.a,
            b: self.b + rhs.b,
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// Commutation test for the displacement operators at p and q:
/// tr(p.a * q.b) == tr(q.a * p.b).
pub fn commutes(p: Point, q: Point) -> bool {
    (p.a * q.b).trace_bit() == (q.a * p.b).trace_bit()
}

/// The eight free entries of a seed pair: first seed
/// p1 = ((a11, b11), (a12, b12)) spread over rows one and two as
/// (a11, b11) and (a12, b12), second seed likewise from the 2x entries.
///
/// Field names follow the a_{rc}/b_{rc} indexing of the table entries:
/// row r in {1, 2}, column c in {1, 2}; column 3 of each seed row is
/// the sum of columns 1 and 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeedParams {
    pub a11: FieldElement,
    pub b11: FieldElement,
    pub a12: FieldElement,
    pub b12: FieldElement,
    pub a21: FieldElement,
    pub b21: FieldElement,
    pub a22: FieldElement,
    pub b22: FieldElement,
}

impl SeedParams {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        a11: FieldElement,
        b11: FieldElement,
        a12: FieldElement,
        b12: FieldElement,
        a21: FieldElement,
        b21: FieldElement,
        a22: FieldElement,
        b22: FieldElement,
    ) -> Result<Self, GaloisError> {
        let all = [a11, b11, a12, b12, a21, b21, a22, b22];
        let ctx = a11.ctx();
        if ctx != FieldCtx::gf4() {
            return Err(GaloisError::ContextMismatch);
        }
        if all.iter().any(|e| e.ctx() != ctx) {
            return Err(GaloisError::ContextMismatch);
        }
        Ok(SeedParams {
            a11,
            b11,
            a12,
            b12,
            a21,
            b21,
            a22,
            b22,
        })
    }

    pub fn from_bits(bits: [u8; 8]) -> Result<Self, GaloisError> {
        let ctx = FieldCtx::gf4();
        let e: Result<Vec<_>, _> = bits.iter().map(|&b| ctx.element(b)).collect();
        let e = e?;
        SeedParams::new(e[0], e[1], e[2], e[3], e[4], e[5], e[6], e[7])
    }

    /// Entries in lexicographic sweep order (a11 most significant).
    pub fn as_array(&self) -> [FieldElement; 8] {
        [
            self.a11, self.b11, self.a12, self.b12, self.a21, self.b21, self.a22, self.b22,
        ]
    }

    pub fn row1(&self) -> [Point; 2] {
        [
            Point {
                a: self.a11,
                b: self.b11,
            },
            Point {
                a: self.a12,
                b: self.b12,
            },
        ]
    }

    pub fn row2(&self) -> [Point; 2] {
        [
            Point {
                a: self.a21,
                b: self.b21,
            },
            Point {
                a: self.a22,
                b: self.b22,
            },
        ]
    }

    /// All 4^8 = 65536 seed assignments in lexicographic order.
    pub fn sweep() -> impl Iterator<Item = SeedParams> {
        (0u32..1 << 16).map(|bits| {
            let mut e = [0u8; 8];
            for (k, slot) in e.iter_mut().enumerate() {
                *slot = (bits >> (2 * (7 - k)) & 3) as u8;
            }
            SeedParams::from_bits(e).expect("two-bit values are valid GF(4) elements")
        })
    }
}

impl fmt::Display for SeedParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "a11={} b11={} a12={} b12={} a21={} b21={} a22={} b22={}",
            self.a11, self.b11, self.a12, self.b12, self.a21, self.b21, self.a22, self.b22
        )
    }
}

/// Completes a commuting pair to a row: the third operator is the
/// product of the first two, which lives at the point sum.
pub fn complete_row(p: Point, q: Point) -> [Point; 3] {
    [p, q, p + q]
}

/// Builds the full 5x3 table from a seed pair.
///
/// Rows one and two complete the seeds. Row r in {3, 4, 5}, column c
/// takes the sum of the row-two entry in column c and the row-one entry
/// in column ((c - 1 + r - 3) mod 3) + 1, so each later row pairs the
/// two seed rows under a cyclic column shift that grows by one per row.
pub fn build_table(seeds: &SeedParams) -> MubTable {
    let [p1a, p1b] = seeds.row1();
    let [p2a, p2b] = seeds.row2();
    let r1 = complete_row(p1a, p1b);
    let r2 = complete_row(p2a, p2b);
    let mut rows = [r1, r2, r1, r1, r1];
    for (r, row) in rows.iter_mut().enumerate().skip(2) {
        for (c, cell) in row.iter_mut().enumerate() {
            let shifted = (c + r - 2) % 3;
            *cell = r2[c] + r1[shifted];
        }
    }
    MubTable { rows }
}

/// Row-commutation flags and the partition flag for a table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableValidity {
    pub rows_commute: [bool; 5],
    pub partition: bool,
}

impl TableValidity {
    pub fn is_valid(&self) -> bool {
        self.rows_commute.iter().all(|&b| b) && self.partition
    }
}

/// Why a table fails to partition the nonzero points: repeated points
/// with their 1-based row numbers, and rows containing the origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionReport {
    pub ok: bool,
    pub duplicates: Vec<(Point, Vec<usize>)>,
    pub zero_rows: Vec<usize>,
}

/// A 5x3 table of phase-space points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MubTable {
    rows: [[Point; 3]; 5],
}

impl MubTable {
    pub fn from_rows(rows: [[Point; 3]; 5]) -> Result<Self, GaloisError> {
        let ctx = rows[0][0].a.ctx();
        for row in &rows {
            for p in row {
                if p.a.ctx() != ctx || p.b.ctx() != ctx {
                    return Err(GaloisError::ContextMismatch);
                }
            }
        }
        Ok(MubTable { rows })
    }

    pub fn rows(&self) -> &[[Point; 3]; 5] {
        &self.rows
    }

    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        self.rows.iter().flatten().copied()
    }

    /// Checks each row for pairwise commutation and the whole table for
    /// the partition property.
    pub fn validity(&self) -> TableValidity {
        let mut rows_commute = [false; 5];
        for (r, row) in self.rows.iter().enumerate() {
            rows_commute[r] =
                commutes(row[0], row[1]) && commutes(row[0], row[2]) && commutes(row[1], row[2]);
        }
        TableValidity {
            rows_commute,
            partition: self.partition_check().ok,
        }
    }

    /// Details of the partition property: the 15 cells must cover every
    /// nonzero point exactly once, with no origin entries.
    pub fn partition_check(&self) -> PartitionReport {
        let mut zero_rows = Vec::new();
        for (r, row) in self.rows.iter().enumerate() {
            if row.iter().any(Point::is_origin) {
                zero_rows.push(r + 1);
            }
        }
        let mut seen: Vec<(Point, Vec<usize>)> = Vec::new();
        for (r, row) in self.rows.iter().enumerate() {
            for p in row {
                match seen.iter_mut().find(|(q, _)| q == p) {
                    Some((_, rows)) => rows.push(r + 1),
                    None => seen.push((*p, vec![r + 1])),
                }
            }
        }
        let duplicates: Vec<_> = seen
            .into_iter()
            .filter(|(_, rows)| rows.len() > 1)
            .collect();
        let ok = duplicates.is_empty() && zero_rows.is_empty();
        PartitionReport {
            ok,
            duplicates,
            zero_rows,
        }
    }

    /// Canonical form under the symmetries that do not change the
    /// partition into commuting triples: sort within rows, then sort
    /// rows. Two tables describe the same structure exactly when their
    /// canonical forms are equal.
    pub fn canonicalize(&self) -> MubTable {
        let mut rows = self.rows;
        for row in &mut rows {
            row.sort();
        }
        rows.sort();
        MubTable { rows }
    }
}

impl fmt::Display for MubTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (r, row) in self.rows.iter().enumerate() {
            if r > 0 {
                writeln!(f)?;
            }
            write!(f, "{} {} {}", row[0], row[1], row[2])?;
        }
        Ok(())
    }
}

/// The 15 within-row commutation relations of the generic table, in
/// reading order: rows one through five, pairs (1,2), (1,3), (2,3)
/// within each row. Index k holds relation k+1.
pub fn commutation_relations(seeds: &SeedParams) -> [bool; 15] {
    let table = build_table(seeds);
    let mut out = [false; 15];
    for (r, row) in table.rows().iter().enumerate() {
        for (k, (i, j)) in [(0, 1), (0, 2), (1, 2)].into_iter().enumerate() {
            out[3 * r + k] = commutes(row[i], row[j]);
        }
    }
    out
}
