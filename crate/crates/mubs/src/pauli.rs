//! Exact two-qubit Pauli operators, joint eigenbases, and the mutual
//! unbiasedness check.
//!
//! Every quantity here is a Gaussian integer or a rational number, so
//! equality tests are exact. A phase-space point maps to a hermitian
//! operator i^y (X^{a_1} Z^{b_1} (x) X^{a_2} Z^{b_2}) where the
//! exponents are self-dual coordinates of the point and y counts the
//! factors with both exponents set (each such factor is a sigma_y).
//! Rows of a valid table are triples of commuting operators; their
//! joint eigenbases are computed from integer projectors, and bases of
//! different rows must be unbiased: every cross overlap squared equals
//! exactly 1/4.

use std::fmt;

use num_complex::Complex;
use num_rational::Ratio;
use thiserror::Error;

use crate::galois::DualBasis;
use crate::phase_space::{commutes, MubTable, PartitionReport, Point};

pub type GaussianInt = Complex<i64>;
pub type Rational = Ratio<i64>;

type Mat2 = [[GaussianInt; 2]; 2];
type Mat4 = [[GaussianInt; 4]; 4];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PauliError {
    #[error("operators at {0} and {1} do not commute")]
    NonCommutingRow(Point, Point),
    #[error("joint projector vanished; generators at {0} and {1} are dependent")]
    DegenerateRow(Point, Point),
}

const ZERO: GaussianInt = Complex::new(0, 0);
const ONE_C: GaussianInt = Complex::new(1, 0);
const I_C: GaussianInt = Complex::new(0, 1);

/// i^k for k mod 4.
fn unit_phase(k: u8) -> GaussianInt {
    match k % 4 {
        0 => ONE_C,
        1 => I_C,
        2 => -ONE_C,
        _ => -I_C,
    }
}

/// A single-qubit tensor factor X^x Z^z, phase excluded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Factor {
    pub x: bool,
    pub z: bool,
}

impl Factor {
    fn letter(&self) -> char {
        match (self.x, self.z) {
            (false, false) => 'I',
            (true, false) => 'X',
            (false, true) => 'Z',
            (true, true) => 'Y',
        }
    }

    /// The 2x2 matrix of X^x Z^z. The (1,1) case is XZ, which is
    /// anti-hermitian; the hermitian sigma_y is i times this.
    fn matrix(&self) -> Mat2 {
        match (self.x, self.z) {
            (false, false) => [[ONE_C, ZERO], [ZERO, ONE_C]],
            (true, false) => [[ZERO, ONE_C], [ONE_C, ZERO]],
            (false, true) => [[ONE_C, ZERO], [ZERO, -ONE_C]],
            (true, true) => [[ZERO, -ONE_C], [ONE_C, ZERO]],
        }
    }
}

/// A two-qubit Pauli operator i^phase (f1 (x) f2).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PauliOp {
    pub factors: [Factor; 2],
    /// Power of i in front of the bare X/Z monomial, mod 4.
    pub phase: u8,
}

impl PauliOp {
    /// The bare displacement operator at a point: exponents are the
    /// self-dual coordinates, no phase correction.
    pub fn at_point(p: Point) -> Self {
        let basis = DualBasis::gf4_self_dual();
        let xs = p.a.coordinates(&basis).expect("gf4 basis is self-dual");
        let zs = p.b.coordinates(&basis).expect("gf4 basis is self-dual");
        PauliOp {
            factors: [
                Factor {
                    x: xs[0] == 1,
                    z: zs[0] == 1,
                },
                Factor {
                    x: xs[1] == 1,
                    z: zs[1] == 1,
                },
            ],
            phase: 0,
        }
    }

    /// The hermitian representative of this operator's ray: phase i per
    /// factor with both exponents set, turning each XZ into sigma_y.
    pub fn hermitian_canonical(mut self) -> Self {
        self.phase = self.factors.iter().filter(|f| f.x && f.z).count() as u8 % 4;
        self
    }

    /// Two-letter name from the factors alone: I, X, Y, Z per qubit.
    pub fn name(&self) -> String {
        self.factors.iter().map(Factor::letter).collect()
    }

    pub fn matrix(&self) -> Mat4 {
        let mut out = [[ZERO; 4]; 4];
        let m1 = self.factors[0].matrix();
        let m2 = self.factors[1].matrix();
        let ph = unit_phase(self.phase);
        for r1 in 0..2 {
            for c1 in 0..2 {
                for r2 in 0..2 {
                    for c2 in 0..2 {
                        out[2 * r1 + r2][2 * c1 + c2] = ph * m1[r1][c1] * m2[r2][c2];
                    }
                }
            }
        }
        out
    }
}

/// Product of two Pauli operators, tracking the phase exactly: pushing
/// each Z^b past an X^a costs (-1)^{ba} per factor.
pub fn op_product(lhs: PauliOp, rhs: PauliOp) -> PauliOp {
    let mut phase = lhs.phase + rhs.phase;
    let mut factors = [Factor { x: false, z: false }; 2];
    for (slot, (l, r)) in factors
        .iter_mut()
        .zip(lhs.factors.into_iter().zip(rhs.factors))
    {
        if l.z && r.x {
            phase += 2;
        }
        *slot = Factor {
            x: l.x != r.x,
            z: l.z != r.z,
        };
    }
    PauliOp {
        factors,
        phase: phase % 4,
    }
}

fn mat_mul(a: &Mat4, b: &Mat4) -> Mat4 {
    let mut out = [[ZERO; 4]; 4];
    for r in 0..4 {
        for c in 0..4 {
            for k in 0..4 {
                out[r][c] += a[r][k] * b[k][c];
            }
        }
    }
    out
}

/// Matrix-level commutation: MN == NM on the bare operators.
pub fn matrices_commute(p: Point, q: Point) -> bool {
    let mp = PauliOp::at_point(p).matrix();
    let mq = PauliOp::at_point(q).matrix();
    mat_mul(&mp, &mq) == mat_mul(&mq, &mp)
}

/// An exact eigenvector: Gaussian-integer amplitudes with the squared
/// norm carried separately, so the normalized vector is amps / sqrt(norm2).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasisVector {
    pub amps: [GaussianInt; 4],
    pub norm2: i64,
}

fn format_gaussian(z: GaussianInt) -> String {
    match (z.re, z.im) {
        (re, 0) => re.to_string(),
        (0, 1) => "i".to_owned(),
        (0, -1) => "-i".to_owned(),
        (0, im) => format!("{im}i"),
        (re, 1) => format!("{re}+i"),
        (re, -1) => format!("{re}-i"),
        (re, im) if im > 0 => format!("{re}+{im}i"),
        (re, im) => format!("{re}{im}i"),
    }
}

impl fmt::Display for BasisVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.amps.iter().map(|&z| format_gaussian(z)).collect();
        write!(f, "({})", parts.join(", "))?;
        if self.norm2 != 1 {
            write!(f, "/\u{221a}{}", self.norm2)?;
        }
        Ok(())
    }
}

impl BasisVector {
    fn from_column(col: [GaussianInt; 4]) -> Self {
        // divide out the integer content
        let mut g: i64 = 0;
        for z in &col {
            g = gcd(g, z.re.abs());
            g = gcd(g, z.im.abs());
        }
        let mut amps = col.map(|z| GaussianInt::new(z.re / g, z.im / g));
        // rotate by a unit so the leading amplitude lands in the
        // half-open quadrant re > 0, im >= 0 (or on the positive
        // imaginary axis when re = 0)
        let lead = amps
            .iter()
            .copied()
            .find(|z| *z != ZERO)
            .expect("nonzero column");
        for k in 0..4 {
            let w = unit_phase(k) * lead;
            if (w.re > 0 && w.im >= 0) || (w.re == 0 && w.im > 0) {
                let unit = unit_phase(k);
                amps = amps.map(|z| unit * z);
                break;
            }
        }
        let norm2 = amps.iter().map(|z| z.re * z.re + z.im * z.im).sum();
        BasisVector { amps, norm2 }
    }

    /// Exact squared overlap with another vector of the same kind:
    /// |<self|other>|^2 / (norm2 * norm2).
    pub fn overlap_squared(&self, other: &BasisVector) -> Rational {
        let mut ip = ZERO;
        for (a, b) in self.amps.iter().zip(&other.amps) {
            ip += a.conj() * b;
        }
        Rational::new(ip.re * ip.re + ip.im * ip.im, self.norm2 * other.norm2)
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Joint eigenbasis of a commuting row. The two generators are the two
/// smallest points of the row; the four vectors come from the integer
/// projectors 4P = (I + s1 W1)(I + s2 W2) in sign order
/// (+,+), (+,-), (-,+), (-,-).
pub fn joint_eigenbasis(row: &[Point; 3]) -> Result<[BasisVector; 4], PauliError> {
    for i in 0..3 {
        for j in i + 1..3 {
            if !commutes(row[i], row[j]) {
                return Err(PauliError::NonCommutingRow(row[i], row[j]));
            }
        }
    }
    let mut pts = *row;
    pts.sort();
    let w1 = PauliOp::at_point(pts[0]).hermitian_canonical().matrix();
    let w2 = PauliOp::at_point(pts[1]).hermitian_canonical().matrix();

    let identity: Mat4 = {
        let mut m = [[ZERO; 4]; 4];
        for (k, row) in m.iter_mut().enumerate() {
            row[k] = ONE_C;
        }
        m
    };
    let add = |a: &Mat4, b: &Mat4, sign: i64| {
        let mut out = [[ZERO; 4]; 4];
        for r in 0..4 {
            for c in 0..4 {
                out[r][c] = a[r][c] + GaussianInt::new(sign, 0) * b[r][c];
            }
        }
        out
    };

    let mut vecs = Vec::with_capacity(4);
    for (s1, s2) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
        let proj4 = mat_mul(&add(&identity, &w1, s1), &add(&identity, &w2, s2));
        let col = (0..4)
            .map(|c| [proj4[0][c], proj4[1][c], proj4[2][c], proj4[3][c]])
            .find(|col| col.iter().any(|z| *z != ZERO))
            .ok_or(PauliError::DegenerateRow(pts[0], pts[1]))?;
        vecs.push(BasisVector::from_column(col));
    }
    Ok(vecs.try_into().expect("four sign pairs"))
}

/// Separability class of a basis, from the two-qubit reshaping
/// determinant v0 v3 - v1 v2 of each vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisClass {
    /// Every vector is a product state.
    Separable,
    /// No vector is a product state.
    Entangled,
    /// A mix of both, which no commuting row produces.
    Anomalous,
}

impl fmt::Display for BasisClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BasisClass::Separable => "separable",
            BasisClass::Entangled => "entangled",
            BasisClass::Anomalous => "anomalous",
        })
    }
}

pub fn classify_basis(basis: &[BasisVector; 4]) -> BasisClass {
    let product_states = basis
        .iter()
        .filter(|v| v.amps[0] * v.amps[3] - v.amps[1] * v.amps[2] == ZERO)
        .count();
    match product_states {
        4 => BasisClass::Separable,
        0 => BasisClass::Entangled,
        _ => BasisClass::Anomalous,
    }
}

/// Everything verified about one row of a table.
#[derive(Debug, Clone)]
pub struct RowReport {
    /// 1-based row number.
    pub row: usize,
    pub operators: [String; 3],
    pub commute_predicate: bool,
    pub commute_matrix: bool,
    /// Point pairs of this row that fail to commute, in cell order.
    pub noncommuting: Vec<(Point, Point)>,
    pub basis: Option<[BasisVector; 4]>,
    pub orthonormal: bool,
    pub class: Option<BasisClass>,
}

/// Cross overlaps between the eigenbases of two rows.
#[derive(Debug, Clone)]
pub struct OverlapReport {
    /// 1-based row pair, first < second.
    pub rows: (usize, usize),
    pub all_quarter: bool,
    pub matrix: [[Rational; 4]; 4],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Signature {
    pub separable: usize,
    pub entangled: usize,
    pub anomalous: usize,
}

/// Full verification record for a table.
#[derive(Debug, Clone)]
pub struct MubReport {
    pub rows: Vec<RowReport>,
    /// Whether the trace predicate and the matrix commutator agreed on
    /// every within-row pair.
    pub commutation_agreement: bool,
    pub partition: PartitionReport,
    pub overlaps: Vec<OverlapReport>,
    pub signature: Signature,
    pub valid: bool,
}

/// Verifies a table from first principles: row commutation checked both
/// through the trace predicate and through matrix commutators, the
/// partition property, orthonormality of each row's eigenbasis, all 160
/// cross overlaps, and the separability signature, which must be
/// exactly 3 separable rows and 2 entangled rows.
pub fn verify_mub(table: &MubTable) -> MubReport {
    let mut rows = Vec::with_capacity(5);
    let mut commutation_agreement = true;
    let mut bases: Vec<Option<[BasisVector; 4]>> = Vec::with_capacity(5);

    for (r, row) in table.rows().iter().enumerate() {
        let mut pred = true;
        let mut matr = true;
        let mut noncommuting = Vec::new();
        for i in 0..3 {
            for j in i + 1..3 {
                let p = commutes(row[i], row[j]);
                let m = matrices_commute(row[i], row[j]);
                pred &= p;
                matr &= m;
                commutation_agreement &= p == m;
                if !p {
                    noncommuting.push((row[i], row[j]));
                }
            }
        }
        let basis = joint_eigenbasis(row).ok();
        let orthonormal = basis.as_ref().is_some_and(|b| {
            (0..4).all(|i| {
                (0..4).all(|j| {
                    let want = Rational::from_integer(i64::from(i == j));
                    b[i].overlap_squared(&b[j]) == want
                })
            })
        });
        let class = basis.as_ref().map(classify_basis);
        rows.push(RowReport {
            row: r + 1,
            operators: [
                PauliOp::at_point(row[0]).name(),
                PauliOp::at_point(row[1]).name(),
                PauliOp::at_point(row[2]).name(),
            ],
            commute_predicate: pred,
            commute_matrix: matr,
            noncommuting,
            basis,
            orthonormal,
            class,
        });
        bases.push(rows.last().unwrap().basis);
    }

    let mut overlaps = Vec::new();
    let quarter = Rational::new(1, 4);
    for r in 0..5 {
        for s in r + 1..5 {
            let (Some(br), Some(bs)) = (&bases[r], &bases[s]) else {
                continue;
            };
            let mut matrix = [[Rational::from_integer(0); 4]; 4];
            let mut all_quarter = true;
            for i in 0..4 {
                for j in 0..4 {
                    matrix[i][j] = br[i].overlap_squared(&bs[j]);
                    all_quarter &= matrix[i][j] == quarter;
                }
            }
            overlaps.push(OverlapReport {
                rows: (r + 1, s + 1),
                all_quarter,
                matrix,
            });
        }
    }

    let signature = Signature {
        separable: rows
            .iter()
            .filter(|r| r.class == Some(BasisClass::Separable))
            .count(),
        entangled: rows
            .iter()
            .filter(|r| r.class == Some(BasisClass::Entangled))
            .count(),
        anomalous: rows
            .iter()
            .filter(|r| r.class == Some(BasisClass::Anomalous))
            .count(),
    };
    let partition = table.partition_check();
    let valid = rows
        .iter()
        .all(|r| r.commute_predicate && r.commute_matrix && r.orthonormal)
        && commutation_agreement
        && partition.ok
        && overlaps.len() == 10
        && overlaps.iter().all(|o| o.all_quarter)
        && signature
            == Signature {
                separable: 3,
                entangled: 2,
                anomalous: 0,
            };

    MubReport {
        rows,
        commutation_agreement,
        partition,
        overlaps,
        signature,
        valid,
    }
}
