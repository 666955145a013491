//! Monic polynomial sequences, recurrence tables, structure coefficients and
//! the canonical dual functionals.
//!
//! A d-orthogonal monic sequence obeys the (d+1)-term recurrence
//!
//! ```text
//! x·P_n = P_{n+1} + β_n P_n + Σ_{j=0}^{d−1} γ^{d−1−j}_{n−j} P_{n−1−j},   P_{−i} = 0.
//! ```
//!
//! For d = 2 the usual names are `α_n = γ^1_n` and `γ_n = γ^0_n`, giving
//! `x·P_n = P_{n+1} + β_n P_n + α_n P_{n−1} + γ_{n−1} P_{n−2}`.
//!
//! Pairings `⟨u_i, q⟩` with the dual functionals are read off as the i-th
//! coefficient of `q` in the basis `{P_n}`; no moment sums are formed.

use crate::error::{Error, Result, ShapeViolation};
use crate::poly::Poly;
use crate::report::{Record, Status, VerificationReport};
use crate::scalar::Scalar;

/// Recurrence coefficients of a (d+1)-term recurrence.
#[derive(Clone, Debug, PartialEq)]
pub struct RecurrenceTable<T> {
    d: usize,
    /// `beta[n] = β_n`, n ≥ 0.
    beta: Vec<T>,
    /// `gammas[i][k − 1] = γ^i_k`, k ≥ 1.
    gammas: Vec<Vec<T>>,
}

impl<T: Scalar> RecurrenceTable<T> {
    /// General-d table; `gammas` must hold exactly `d` arrays, 1-based in k.
    pub fn new(d: usize, beta: Vec<T>, gammas: Vec<Vec<T>>) -> Result<Self> {
        if d == 0 {
            return Err(Error::Invalid("d must be at least 1".into()));
        }
        if gammas.len() != d {
            return Err(Error::Invalid(format!(
                "expected {d} gamma arrays, got {}",
                gammas.len()
            )));
        }
        Ok(RecurrenceTable { d, beta, gammas })
    }

    /// d = 2 table from `β_0..`, `α_1..`, `γ_1..`.
    pub fn two_orthogonal(beta: Vec<T>, alpha: Vec<T>, gamma: Vec<T>) -> Self {
        RecurrenceTable {
            d: 2,
            beta,
            gammas: vec![gamma, alpha],
        }
    }

    /// Tabulates closed-form generators: `β_n` for `n = 0..=size`,
    /// `α_n` and `γ_n` for `n = 1..=size`.
    pub fn from_generators(
        size: usize,
        beta: impl Fn(i64) -> T,
        alpha: impl Fn(i64) -> T,
        gamma: impl Fn(i64) -> T,
    ) -> Self {
        let upto = size as i64;
        Self::two_orthogonal(
            (0..=upto).map(&beta).collect(),
            (1..=upto).map(&alpha).collect(),
            (1..=upto).map(&gamma).collect(),
        )
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn betas(&self) -> &[T] {
        &self.beta
    }

    /// `γ^i_k` for k = 1.. as stored.
    pub fn gamma_array(&self, i: usize) -> &[T] {
        &self.gammas[i]
    }

    /// `β_n`; zero for negative n.
    pub fn beta(&self, n: i64) -> Result<T> {
        if n < 0 {
            return Ok(T::zero());
        }
        self.beta
            .get(n as usize)
            .cloned()
            .ok_or(Error::MissingCoefficient {
                name: "beta",
                index: n,
            })
    }

    /// `γ^i_k`; zero for k ≤ 0.
    pub fn gamma_sup(&self, i: usize, k: i64) -> Result<T> {
        if k <= 0 {
            return Ok(T::zero());
        }
        self.gammas
            .get(i)
            .and_then(|g| g.get(k as usize - 1))
            .cloned()
            .ok_or(Error::MissingCoefficient {
                name: "gamma^i",
                index: k,
            })
    }

    /// `α_n = γ^1_n` (d = 2); zero for n ≤ 0.
    pub fn alpha(&self, n: i64) -> Result<T> {
        self.require_d2()?;
        self.gamma_sup(1, n).map_err(|_| Error::MissingCoefficient {
            name: "alpha",
            index: n,
        })
    }

    /// `γ_n = γ^0_n` (d = 2); zero for n ≤ 0.
    pub fn gamma(&self, n: i64) -> Result<T> {
        self.require_d2()?;
        self.gamma_sup(0, n).map_err(|_| Error::MissingCoefficient {
            name: "gamma",
            index: n,
        })
    }

    fn require_d2(&self) -> Result<()> {
        if self.d == 2 {
            Ok(())
        } else {
            Err(Error::Invalid(format!(
                "named alpha/gamma need d = 2, table has d = {}",
                self.d
            )))
        }
    }

    /// Regularity: every tabulated lowest coefficient `γ^0_k` is nonzero.
    pub fn is_regular(&self) -> bool {
        self.gammas[0].iter().all(|g| !g.is_zero())
    }

    /// First k with `γ^0_k = 0`.
    pub fn first_vanishing_gamma(&self) -> Option<usize> {
        self.gammas[0]
            .iter()
            .position(|g| g.is_zero())
            .map(|i| i + 1)
    }

    /// Copy with `γ^i_k` replaced.
    pub fn with_gamma_sup(&self, i: usize, k: usize, value: T) -> Result<Self> {
        let mut out = self.clone();
        let slot = out
            .gammas
            .get_mut(i)
            .and_then(|g| g.get_mut(k.wrapping_sub(1)))
            .ok_or(Error::MissingCoefficient {
                name: "gamma^i",
                index: k as i64,
            })?;
        *slot = value;
        Ok(out)
    }

    /// First disagreement with `other` on `β_n` (n ≤ upto) and `γ^i_k` (1 ≤ k ≤ upto),
    /// comparing only entries tabulated in both.
    pub fn first_mismatch(&self, other: &Self, upto: usize) -> Option<(String, usize)> {
        if self.d != other.d {
            return Some(("d".into(), self.d));
        }
        for n in 0..=upto {
            match (self.beta.get(n), other.beta.get(n)) {
                (Some(a), Some(b)) if a != b => return Some(("beta".into(), n)),
                (Some(_), Some(_)) => {}
                _ => return Some(("beta (untabulated)".into(), n)),
            }
        }
        for i in 0..self.d {
            for k in 1..=upto {
                match (self.gammas[i].get(k - 1), other.gammas[i].get(k - 1)) {
                    (Some(a), Some(b)) if a != b => return Some((self.gamma_name(i), k)),
                    (Some(_), Some(_)) => {}
                    _ => return Some((format!("{} (untabulated)", self.gamma_name(i)), k)),
                }
            }
        }
        None
    }

    fn gamma_name(&self, i: usize) -> String {
        match (self.d, i) {
            (2, 1) => "alpha".into(),
            (2, 0) => "gamma".into(),
            _ => format!("gamma^{i}"),
        }
    }

    /// Largest n such that `generate` can build `P_0..P_n`.
    pub fn max_degree(&self) -> usize {
        // P_{n+1} needs β_n and γ^{d−1−j}_{n−j}
        let mut cap = self.beta.len();
        for j in 0..self.d {
            let len = self.gammas[self.d - 1 - j].len();
            cap = cap.min(len + j + 1);
        }
        cap
    }
}

/// Where a sequence came from.
#[derive(Clone, Debug, PartialEq)]
pub enum Provenance<T> {
    Recurrence(RecurrenceTable<T>),
    /// Eigenpolynomials of an operator, described in words.
    Eigen(String),
    /// Normalized derivatives of another sequence.
    Derivative,
    Explicit,
}

/// `P_0..P_N`, each `P_n` monic of exact degree n.
#[derive(Clone, Debug, PartialEq)]
pub struct MonicSequence<T> {
    polys: Vec<Poly<T>>,
    provenance: Provenance<T>,
}

impl<T: Scalar> MonicSequence<T> {
    pub fn new(polys: Vec<Poly<T>>, provenance: Provenance<T>) -> Result<Self> {
        for (n, p) in polys.iter().enumerate() {
            if p.degree() != n as isize || !p.is_monic() {
                return Err(Error::Invalid(format!("P_{n} is not monic of degree {n}")));
            }
        }
        Ok(MonicSequence { polys, provenance })
    }

    pub fn polys(&self) -> &[Poly<T>] {
        &self.polys
    }

    pub fn provenance(&self) -> &Provenance<T> {
        &self.provenance
    }

    /// `P_n`; zero for negative n.
    pub fn get(&self, n: i64) -> Result<Poly<T>> {
        if n < 0 {
            return Ok(Poly::zero());
        }
        self.polys
            .get(n as usize)
            .cloned()
            .ok_or(Error::IndexOutOfRange {
                index: n,
                available: self.max_degree() as i64,
            })
    }

    /// N, the degree of the last polynomial.
    pub fn max_degree(&self) -> usize {
        self.polys.len() - 1
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// Expansion of `p` in the basis `{P_n}`.
    pub fn expand(&self, p: &Poly<T>) -> Result<BasisExpansion<T>> {
        expand_in_basis(p, self)
    }

    /// Linear combination `Σ c_k P_{offset+k}` with `P_{<0} = 0`.
    pub fn combine(&self, terms: &[(i64, T)]) -> Result<Poly<T>> {
        let mut acc = Poly::zero();
        for (idx, c) in terms {
            if *idx < 0 || c.is_zero() {
                continue;
            }
            acc = acc + self.get(*idx)?.scale(c);
        }
        Ok(acc)
    }
}

/// Coefficients `c_0..c_m` of a polynomial in the basis `{P_n}`.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisExpansion<T> {
    pub coeffs: Vec<T>,
}

impl<T: Scalar> BasisExpansion<T> {
    /// `c_i`; zero outside the stored range.
    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `Σ c_ν P_ν`.
    pub fn reconstruct(&self, seq: &MonicSequence<T>) -> Poly<T> {
        self.coeffs
            .iter()
            .zip(seq.polys())
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, p)| p.scale(c))
            .sum()
    }
}

/// Builds `P_0..P_size` from the recurrence, starting at `P_0 = 1`.
pub fn generate<T: Scalar>(rt: &RecurrenceTable<T>, size: usize) -> Result<MonicSequence<T>> {
    let mut polys: Vec<Poly<T>> = Vec::with_capacity(size + 1);
    polys.push(Poly::one());
    for n in 0..size {
        let ni = n as i64;
        let xp = polys[n].shift_up(1);
        let mut next = xp - polys[n].scale(&rt.beta(ni)?);
        for j in 0..rt.d() {
            let Some(idx) = n.checked_sub(1 + j) else {
                break;
            };
            let g = rt.gamma_sup(rt.d() - 1 - j, ni - j as i64)?;
            next = next - polys[idx].scale(&g);
        }
        polys.push(next);
    }
    MonicSequence::new(polys, Provenance::Recurrence(rt.clone()))
}

/// Unique coefficients of `p` in the basis, by descending triangular reduction.
pub fn expand_in_basis<T: Scalar>(
    p: &Poly<T>,
    seq: &MonicSequence<T>,
) -> Result<BasisExpansion<T>> {
    if p.degree() > seq.max_degree() as isize {
        return Err(Error::DegreeTooLarge {
            degree: p.degree(),
            max: seq.max_degree(),
        });
    }
    if p.is_zero() {
        return Ok(BasisExpansion { coeffs: Vec::new() });
    }
    let deg = p.degree() as usize;
    let mut rem = p.coeffs().to_vec();
    let mut coeffs = vec![T::zero(); deg + 1];
    for k in (0..=deg).rev() {
        let c = rem[k].clone();
        if c.is_zero() {
            continue;
        }
        for (i, pk) in seq.polys[k].coeffs().iter().enumerate() {
            rem[i] = rem[i].clone() - c.clone() * pk.clone();
        }
        coeffs[k] = c;
    }
    Ok(BasisExpansion { coeffs })
}

/// Expansion of `x·P_n` read from the recurrence table:
/// `P_{n+1} + β_n P_n + Σ_j γ^{d−1−j}_{n−j} P_{n−1−j}`.
pub fn multiply_by_x<T: Scalar>(
    seq: &MonicSequence<T>,
    rt: &RecurrenceTable<T>,
    n: usize,
) -> Result<BasisExpansion<T>> {
    if n + 1 > seq.max_degree() {
        return Err(Error::IndexOutOfRange {
            index: n as i64 + 1,
            available: seq.max_degree() as i64,
        });
    }
    let mut coeffs = vec![T::zero(); n + 2];
    coeffs[n + 1] = T::one();
    coeffs[n] = rt.beta(n as i64)?;
    for j in 0..rt.d() {
        let Some(idx) = n.checked_sub(1 + j) else {
            break;
        };
        coeffs[idx] = rt.gamma_sup(rt.d() - 1 - j, (n - j) as i64)?;
    }
    Ok(BasisExpansion { coeffs })
}

/// `β_n` and the triangular table `χ_{n,ν}` of the structure relation
/// `x·P_{n+1} = P_{n+2} + β_{n+1} P_{n+1} + Σ_{ν ≤ n} χ_{n,ν} P_ν`.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureCoeffs<T> {
    /// `β_0..β_{N−1}`.
    pub beta: Vec<T>,
    /// `chi[n][ν]` for `n = 0..=N−2`, `ν = 0..=n`.
    pub chi: Vec<Vec<T>>,
}

impl<T: Scalar> StructureCoeffs<T> {
    /// Reads off a (d+1)-term recurrence table, rejecting any `χ_{n,ν} ≠ 0`
    /// below the band `ν ≥ n + 1 − d`.
    pub fn to_recurrence(&self, d: usize) -> Result<RecurrenceTable<T>, ShapeViolation> {
        let mut gammas: Vec<Vec<T>> = vec![Vec::new(); d];
        for (n, row) in self.chi.iter().enumerate() {
            for (nu, c) in row.iter().enumerate() {
                if nu + d < n + 1 && !c.is_zero() {
                    return Err(ShapeViolation::ExtraTerm { n, nu });
                }
            }
            // χ_{n, n−j} = γ^{d−1−j}_{n+1−j}
            for j in 0..d.min(n + 1) {
                gammas[d - 1 - j].push(row[n - j].clone());
            }
        }
        Ok(RecurrenceTable {
            d,
            beta: self.beta.clone(),
            gammas,
        })
    }
}

/// Extracts structure coefficients by expanding each `x·P_{n+1}` in the basis.
pub fn structure_coeffs<T: Scalar>(seq: &MonicSequence<T>) -> StructureCoeffs<T> {
    let top = seq.max_degree();
    let mut beta = Vec::new();
    let mut chi = Vec::new();
    if top >= 1 {
        // P_1 = x − β_0
        beta.push(-seq.polys[1].coeff(0));
    }
    for n in 0..top.saturating_sub(1) {
        let xp = seq.polys[n + 1].shift_up(1);
        let e = expand_in_basis(&xp, seq).expect("degree n + 2 is within the basis");
        beta.push(e.coeff(n + 1));
        chi.push((0..=n).map(|nu| e.coeff(nu)).collect());
    }
    StructureCoeffs { beta, chi }
}

/// Moments `(u_i)_n = ⟨u_i, xⁿ⟩` of the first d dual functionals.
#[derive(Clone, Debug, PartialEq)]
pub struct DualMoments<T> {
    pub d: usize,
    /// `moments[i][n] = (u_i)_n`, `n = 0..=N`.
    pub moments: Vec<Vec<T>>,
}

/// `(u_i)_n` as the coefficient of `P_i` in the expansion of `xⁿ`.
pub fn dual_moments<T: Scalar>(seq: &MonicSequence<T>, d: usize) -> DualMoments<T> {
    let mut moments = vec![Vec::with_capacity(seq.len()); d];
    for n in 0..=seq.max_degree() {
        let e = expand_in_basis(&Poly::monomial(T::one(), n), seq).expect("xⁿ within basis");
        for (i, row) in moments.iter_mut().enumerate() {
            row.push(e.coeff(i));
        }
    }
    DualMoments { d, moments }
}

/// `⟨u_i, q⟩` for the canonical dual sequence.
pub fn pairing<T: Scalar>(seq: &MonicSequence<T>, i: usize, q: &Poly<T>) -> Result<T> {
    Ok(expand_in_basis(q, seq)?.coeff(i))
}

/// Smallest sequence degree `check_d_orthogonality` accepts for `(d, M)`.
pub fn required_degree(d: usize, probe_m: usize) -> usize {
    probe_m * (d + 1) + d
}

/// Checks `⟨u_ν, P_m P_n⟩ = 0` for `n ≥ md + ν + 1` and `⟨u_ν, P_m P_{md+ν}⟩ ≠ 0`
/// for `m ≤ M`, `ν < d`, over every n with `m + n ≤ N`.
///
/// Certification is finite: only the probed (m, n) range is examined.
pub fn check_d_orthogonality<T: Scalar>(
    seq: &MonicSequence<T>,
    d: usize,
    probe_m: usize,
) -> Result<VerificationReport<T>> {
    let needed = required_degree(d, probe_m);
    let top = seq.max_degree();
    if top < needed {
        return Err(Error::InsufficientDegree {
            needed,
            available: top,
        });
    }
    let mut report = VerificationReport::new();
    for m in 0..=probe_m {
        let pm = &seq.polys[m];
        for n in m * d..=(top - m) {
            let e = expand_in_basis(&(pm * &seq.polys[n]), seq)?;
            for nu in 0..d {
                let band = m * d + nu;
                if n < band {
                    continue;
                }
                let value = e.coeff(nu);
                let (identity, ok) = if n == band {
                    ("regularity", !value.is_zero())
                } else {
                    ("orthogonality", value.is_zero())
                };
                report.push(Record {
                    identity: identity.to_string(),
                    n: n as i64,
                    m: Some(m),
                    nu: Some(nu),
                    status: if ok { Status::Pass } else { Status::Fail },
                    detail: (!ok).then(|| format!("pairing <u_{nu}, P_{m} P_{n}> = {value}")),
                    witness: None,
                });
            }
        }
    }
    report.note(format!(
        "{d}-orthogonality certified for m <= {probe_m} and m + n <= {top} only"
    ));
    Ok(report)
}

/// `Q_n = P'_{n+1}/(n+1)` for `n = 0..N−1`.
pub fn derivative_sequence<T: Scalar>(seq: &MonicSequence<T>) -> Result<MonicSequence<T>> {
    let polys = seq.polys[1..]
        .iter()
        .enumerate()
        .map(|(n, p)| p.derivative(1).scale(&(T::one() / T::from_usize(n + 1))))
        .collect();
    MonicSequence::new(polys, Provenance::Derivative)
}
