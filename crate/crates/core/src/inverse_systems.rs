//! Inverse systems over the rationals.
//!
//! `R = k[x_1..x_r]` acts on `S = k[y_1..y_r]` by `x_j ↦ ∂/∂y_j`. A finitely
//! generated submodule `M` of `S` determines the algebra `R/Ann(M)`, whose
//! h-vector is the dimension of `M` in each degree and whose socle-vector
//! counts minimal generators of `M`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::monomial::{monomials_of_degree, variable_index, Monomial};
use crate::vectors::{HVector, SocleVector};

/// A non-zero homogeneous polynomial in `y_1..y_r` with rational
/// coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Form {
    r: usize,
    degree: usize,
    coeffs: BTreeMap<Monomial, BigRational>,
}

impl Form {
    /// Collects like terms and drops zero coefficients. Fails when nothing
    /// survives or the terms are not homogeneous in `r` variables.
    pub fn from_terms(
        r: usize,
        terms: impl IntoIterator<Item = (Monomial, BigRational)>,
    ) -> Result<Form> {
        let mut coeffs: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        let mut degree = None;
        for (m, c) in terms {
            if m.num_vars() != r {
                return Err(Error::VariableMismatch {
                    left: r,
                    right: m.num_vars(),
                });
            }
            match degree {
                None => degree = Some(m.degree()),
                Some(d) if d != m.degree() => {
                    return Err(Error::InvalidForm(format!(
                        "terms of degrees {d} and {} are mixed",
                        m.degree()
                    )))
                }
                Some(_) => {}
            }
            *coeffs.entry(m).or_insert_with(BigRational::zero) += c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        match degree {
            Some(degree) if !coeffs.is_empty() => Ok(Form { r, degree, coeffs }),
            _ => Err(Error::InvalidForm(
                "the zero polynomial is not a form".into(),
            )),
        }
    }

    pub fn monomial(m: Monomial) -> Form {
        Form {
            r: m.num_vars(),
            degree: m.degree(),
            coeffs: BTreeMap::from([(m, BigRational::one())]),
        }
    }

    /// `(b_1 y_1 + ... + b_r y_r)^d`, expanded.
    pub fn linear_power(b: &[BigRational], d: usize) -> Result<Form> {
        let r = b.len();
        let fact: Vec<BigUint> = std::iter::once(BigUint::one())
            .chain((1..=d).scan(BigUint::one(), |acc, k| {
                *acc *= k;
                Some(acc.clone())
            }))
            .collect();
        let terms = monomials_of_degree(r, d)?.into_iter().map(|m| {
            let mut c = BigRational::from_integer(BigInt::from(fact[d].clone()));
            for (k, &e) in m.exponents().iter().enumerate() {
                c /= BigRational::from_integer(BigInt::from(fact[e as usize].clone()));
                c *= num_traits::pow(b[k].clone(), e as usize);
            }
            (m, c)
        });
        Form::from_terms(r, terms)
    }

    pub fn num_vars(&self) -> usize {
        self.r
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Terms from the largest monomial down.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.coeffs.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.coeffs
            .get(m)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_monomial(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// `∂f/∂y_j` for 1-based `j`; `None` when the derivative vanishes.
    pub fn differentiate(&self, j: usize) -> Option<Form> {
        if j == 0 || j > self.r {
            return None;
        }
        let terms = self.coeffs.iter().filter_map(|(m, c)| {
            let e = m.exponents()[j - 1];
            m.div_var(j - 1)
                .map(|q| (q, c * BigRational::from_integer(BigInt::from(e))))
        });
        Form::from_terms(self.r, terms).ok()
    }

    pub fn checked_add(&self, other: &Form) -> Result<Option<Form>> {
        if self.r != other.r {
            return Err(Error::VariableMismatch {
                left: self.r,
                right: other.r,
            });
        }
        if self.degree != other.degree {
            return Err(Error::InvalidForm(format!(
                "cannot add forms of degrees {} and {}",
                self.degree, other.degree
            )));
        }
        let terms = self
            .coeffs
            .iter()
            .chain(&other.coeffs)
            .map(|(m, c)| (m.clone(), c.clone()));
        Ok(Form::from_terms(self.r, terms).ok())
    }

    /// Parses `3/2*y1^2*y2 - y3^3`; `x`/`y`/`z` and `x<k>` names are
    /// accepted as aliases.
    pub fn parse(text: &str, r: usize) -> Result<Form> {
        let bad = |why: String| Error::Parse(format!("form {text:?}: {why}"));
        let mut terms = Vec::new();
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        for ch in text.chars() {
            if (ch == '+' || ch == '-') && !current.trim().is_empty() {
                pieces.push((negative, std::mem::take(&mut current)));
                negative = ch == '-';
            } else if ch == '-' {
                negative = !negative;
            } else if ch != '+' {
                current.push(ch);
            }
        }
        pieces.push((negative, current));
        for (negative, piece) in pieces {
            let piece = piece.trim();
            if piece.is_empty() {
                return Err(bad("empty term".into()));
            }
            let mut coeff = BigRational::one();
            let mut exps = vec![0u32; r];
            for factor in piece.split(|c: char| c == '*' || c.is_whitespace()) {
                if factor.is_empty() {
                    continue;
                }
                if factor.starts_with(|c: char| c.is_ascii_digit()) {
                    coeff *= parse_rational(factor)
                        .ok_or_else(|| bad(format!("bad coefficient {factor:?}")))?;
                    continue;
                }
                let (var, exp) = match factor.split_once('^') {
                    Some((v, e)) => (
                        v,
                        e.parse::<u32>()
                            .map_err(|_| bad(format!("bad exponent in {factor:?}")))?,
                    ),
                    None => (factor, 1),
                };
                let j = variable_index(var, r)
                    .ok_or_else(|| bad(format!("unknown variable {var:?}")))?;
                exps[j] += exp;
            }
            if negative {
                coeff = -coeff;
            }
            terms.push((Monomial::new(exps), coeff));
        }
        Form::from_terms(r, terms)
    }

    /// Integer row over the listing `index` of degree-`d` monomials, equal to
    /// the form up to a non-zero scalar.
    fn to_row(&self, index: &HashMap<Monomial, usize>) -> Vec<BigInt> {
        let lcm = self
            .coeffs
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut row = vec![BigInt::zero(); index.len()];
        for (m, c) in &self.coeffs {
            row[index[m]] = (c * BigRational::from_integer(lcm.clone())).to_integer();
        }
        row
    }
}

fn parse_rational(text: &str) -> Option<BigRational> {
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().ok()?;
            let d: BigInt = d.parse().ok()?;
            (!d.is_zero()).then(|| BigRational::new(n, d))
        }
        None => Some(BigRational::from_integer(text.parse().ok()?)),
    }
}

fn write_y_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (j, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        write!(f, "y{}", j + 1)?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (m, c)) in self.terms().enumerate() {
            let abs = c.abs();
            match (k, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let constant = m.degree() == 0;
            if !abs.is_one() || constant {
                write!(f, "{abs}")?;
                if !constant {
                    write!(f, "*")?;
                }
            }
            write_y_monomial(f, m)?;
        }
        Ok(())
    }
}

impl Serialize for Form {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Finitely generated submodule of `S`, kept as its generators by degree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InverseSystemModule {
    r: usize,
    generators: BTreeMap<usize, Vec<Form>>,
}

impl InverseSystemModule {
    pub fn new(r: usize) -> Self {
        InverseSystemModule {
            r,
            generators: BTreeMap::new(),
        }
    }

    pub fn from_forms(r: usize, forms: impl IntoIterator<Item = Form>) -> Result<Self> {
        let mut m = InverseSystemModule::new(r);
        for f in forms {
            m.push(f)?;
        }
        Ok(m)
    }

    pub fn from_monomials<'a>(
        r: usize,
        monomials: impl IntoIterator<Item = &'a Monomial>,
    ) -> Result<Self> {
        Self::from_forms(r, monomials.into_iter().cloned().map(Form::monomial))
    }

    pub fn push(&mut self, f: Form) -> Result<()> {
        if f.num_vars() != self.r {
            return Err(Error::VariableMismatch {
                left: self.r,
                right: f.num_vars(),
            });
        }
        self.generators.entry(f.degree()).or_default().push(f);
        Ok(())
    }

    pub fn num_vars(&self) -> usize {
        self.r
    }

    pub fn generators(&self) -> &BTreeMap<usize, Vec<Form>> {
        &self.generators
    }

    pub fn top_degree(&self) -> Option<usize> {
        self.generators.keys().next_back().copied()
    }

    pub fn is_monomial(&self) -> bool {
        self.generators.values().flatten().all(Form::is_monomial)
    }
}

/// `⟨m, f⟩`.
pub fn adjoin(m: &InverseSystemModule, f: Form) -> Result<InverseSystemModule> {
    let mut out = m.clone();
    out.push(f)?;
    Ok(out)
}

#[derive(Serialize, Deserialize)]
struct ModuleJson {
    r: usize,
    generators: BTreeMap<String, Vec<String>>,
}

impl Serialize for InverseSystemModule {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ModuleJson {
            r: self.r,
            generators: self
                .generators
                .iter()
                .map(|(d, fs)| (d.to_string(), fs.iter().map(ToString::to_string).collect()))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for InverseSystemModule {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = ModuleJson::deserialize(d)?;
        let mut m = InverseSystemModule::new(raw.r);
        for (deg, forms) in &raw.generators {
            for text in forms {
                let f = Form::parse(text, raw.r).map_err(D::Error::custom)?;
                if f.degree().to_string() != *deg {
                    return Err(D::Error::custom(format!(
                        "{text:?} listed under degree {deg}"
                    )));
                }
                m.push(f).map_err(D::Error::custom)?;
            }
        }
        Ok(m)
    }
}

/// Row-echelon basis of integer vectors with distinct pivots, kept
/// primitive to stop coefficient growth.
#[derive(Default)]
struct Echelon {
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl Echelon {
    fn insert(&mut self, mut v: Vec<BigInt>) -> bool {
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let g = row[*p].gcd(&v[*p]);
            let a = &row[*p] / &g;
            let b = &v[*p] / &g;
            for (x, y) in v.iter_mut().zip(row) {
                *x = &a * &*x - &b * y;
            }
            make_primitive(&mut v);
        }
        match v.iter().position(|x| !x.is_zero()) {
            None => false,
            Some(p) => {
                let at = self.rows.partition_point(|(q, _)| *q < p);
                self.rows.insert(at, (p, v));
                true
            }
        }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

fn make_primitive(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
}

/// Degree-wise dimensions of a module: `h_d = dim M_d` and the dimension of
/// the span of first derivatives of `M_{d+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleDimensions {
    pub spans: Vec<usize>,
    pub derivative_spans: Vec<usize>,
}

/// Computes `M_d` from the top degree down as the span of the derivatives of
/// `M_{d+1}` together with the degree-`d` generators.
pub fn module_dimensions(m: &InverseSystemModule) -> Result<ModuleDimensions> {
    let top = m
        .top_degree()
        .ok_or_else(|| Error::InvalidModule("no generators".into()))?;
    let r = m.r;
    let mut spans = vec![0; top + 1];
    let mut derivative_spans = vec![0; top + 1];
    let mut above: Vec<Vec<BigInt>> = Vec::new();
    let mut above_listing: Vec<Monomial> = Vec::new();
    for d in (0..=top).rev() {
        let listing = monomials_of_degree(r, d)?;
        let index: HashMap<Monomial, usize> = listing
            .iter()
            .cloned()
            .enumerate()
            .map(|(k, m)| (m, k))
            .collect();
        let mut basis = Echelon::default();
        for row in &above {
            for j in 0..r {
                let mut v = vec![BigInt::zero(); listing.len()];
                let mut any = false;
                for (c, mono) in row.iter().zip(&above_listing) {
                    if c.is_zero() {
                        continue;
                    }
                    if let Some(q) = mono.div_var(j) {
                        v[index[&q]] += c * BigInt::from(mono.exponents()[j]);
                        any = true;
                    }
                }
                if any {
                    make_primitive(&mut v);
                    basis.insert(v);
                }
            }
        }
        derivative_spans[d] = basis.rank();
        for f in m.generators.get(&d).into_iter().flatten() {
            basis.insert(f.to_row(&index));
        }
        spans[d] = basis.rank();
        above = basis.rows.into_iter().map(|(_, v)| v).collect();
        above_listing = listing;
    }
    Ok(ModuleDimensions {
        spans,
        derivative_spans,
    })
}

/// h-vector of `R/Ann(M)`.
pub fn module_h_vector(m: &InverseSystemModule) -> Result<HVector> {
    let dims = module_dimensions(m)?;
    Ok(HVector::new(
        dims.spans.into_iter().map(BigUint::from).collect(),
    )?)
}

/// Socle-vector of `R/Ann(M)`: `s_i = dim M_i - dim ∂M_{i+1}`.
pub fn module_socle_vector(m: &InverseSystemModule) -> Result<SocleVector> {
    module_invariants(m).map(|(_, s)| s)
}

pub fn module_invariants(m: &InverseSystemModule) -> Result<(HVector, SocleVector)> {
    let dims = module_dimensions(m)?;
    let h = HVector::new(dims.spans.iter().copied().map(BigUint::from).collect())?;
    let mut s: Vec<BigUint> = dims
        .spans
        .iter()
        .zip(&dims.derivative_spans)
        .map(|(a, b)| BigUint::from(a - b))
        .collect();
    s[0] = BigUint::zero();
    if s.len() < 2 {
        return Err(Error::TrivialAlgebra);
    }
    Ok((h, SocleVector::new(s)?))
}

/// Random rational with numerator in `[-bound, bound]` and denominator in
/// `[1, bound]`.
pub fn random_rational<R: Rng + ?Sized>(rng: &mut R, bound: u32) -> BigRational {
    let bound = bound.max(1) as i64;
    let n = rng.gen_range(-bound..=bound);
    let d = rng.gen_range(1..=bound);
    BigRational::new(n.into(), d.into())
}

/// `Σ_{t=1}^m L_t^d` for linear forms with random rational coefficients;
/// `None` in the measure-zero event that the sum vanishes.
pub fn power_sum<R: Rng + ?Sized>(
    m: usize,
    d: usize,
    r: usize,
    rng: &mut R,
    bound: u32,
) -> Result<Option<Form>> {
    let mut total: Option<Form> = None;
    for _ in 0..m {
        let b: Vec<BigRational> = (0..r).map(|_| random_rational(rng, bound)).collect();
        if b.iter().all(Zero::is_zero) {
            continue;
        }
        let term = Form::linear_power(&b, d)?;
        total = match total {
            None => Some(term),
            Some(acc) => acc.checked_add(&term)?,
        };
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::{closure_h_vector, closure_socle_vector, divisor_closure};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeSet;

    fn form(text: &str, r: usize) -> Form {
        Form::parse(text, r).unwrap()
    }

    fn module(r: usize, forms: &[&str]) -> InverseSystemModule {
        InverseSystemModule::from_forms(r, forms.iter().map(|t| form(t, r))).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn parse_and_display() {
        let f = form("3/2*y1^2*y2 - y3^3", 3);
        assert_eq!(f.to_string(), "3/2*y1^2*y2 - y3^3");
        assert_eq!(f.degree(), 3);
        assert_eq!(form(&f.to_string(), 3), f);
        assert_eq!(form("y1 + y2 - y1", 2), form("y2", 2));
        assert_eq!(form("-2 y1 y2", 2).to_string(), "-2*y1*y2");
        assert!(Form::parse("y1 - y1", 2).is_err());
        assert!(Form::parse("y1 + y2^2", 2).is_err());
        assert!(Form::parse("y4", 3).is_err());
        assert!(Form::parse("1/0*y1", 3).is_err());
    }

    #[test]
    fn derivatives() {
        assert_eq!(form("y1^2", 2).differentiate(1), Some(form("2*y1", 2)));
        assert_eq!(form("y1^3", 2).differentiate(2), None);
        let b = [q(1, 1), q(2, 1)];
        let cube = Form::linear_power(&b, 3).unwrap();
        let square = Form::linear_power(&b, 2).unwrap();
        let three_square =
            Form::from_terms(2, square.terms().map(|(m, c)| (m.clone(), c * q(3, 1)))).unwrap();
        assert_eq!(cube.differentiate(1), Some(three_square));
        assert_eq!(cube, form("y1^3 + 6*y1^2*y2 + 12*y1*y2^2 + 8*y2^3", 2));
    }

    #[test]
    fn small_modules() {
        let m = module(2, &["y1^2 + y2^2"]);
        assert_eq!(
            module_h_vector(&m).unwrap(),
            HVector::from_u64s(&[1, 2, 1]).unwrap()
        );
        assert_eq!(
            module_socle_vector(&m).unwrap(),
            SocleVector::from_u64s(&[0, 0, 1]).unwrap()
        );
        let m = module(2, &["y1", "y2^2"]);
        assert_eq!(
            module_socle_vector(&m).unwrap(),
            SocleVector::from_u64s(&[0, 1, 1]).unwrap()
        );
        let m = module(3, &["y1^5"]);
        assert_eq!(
            module_h_vector(&m).unwrap(),
            HVector::from_u64s(&[1; 6]).unwrap()
        );
        let m = adjoin(&module(2, &["y1^4"]), form("y2^4", 2)).unwrap();
        assert_eq!(
            module_h_vector(&m).unwrap(),
            HVector::from_u64s(&[1, 2, 2, 2, 2]).unwrap()
        );
        let again = adjoin(&m, form("y1^4 - 3*y2^4", 2)).unwrap();
        assert_eq!(
            module_h_vector(&again).unwrap(),
            module_h_vector(&m).unwrap()
        );
        assert!(module_h_vector(&InverseSystemModule::new(2)).is_err());
    }

    #[test]
    fn monomial_modules_match_divisor_closure() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..60 {
            let r = rng.gen_range(1..=3);
            let mut gens: BTreeMap<usize, BTreeSet<Monomial>> = BTreeMap::new();
            for _ in 0..rng.gen_range(1..5) {
                let d = rng.gen_range(1..=6);
                let all = monomials_of_degree(r, d).unwrap();
                gens.entry(d)
                    .or_default()
                    .insert(all[rng.gen_range(0..all.len())].clone());
            }
            let closure = divisor_closure(r, &gens);
            let m = InverseSystemModule::from_monomials(r, gens.values().flatten()).unwrap();
            let (h, s) = module_invariants(&m).unwrap();
            assert_eq!(h, closure_h_vector(&closure).unwrap());
            assert_eq!(s, closure_socle_vector(r, &closure).unwrap());
        }
    }

    #[test]
    fn power_sums_are_symmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let f = power_sum(3, 4, 3, &mut rng, 100).unwrap().unwrap();
        let h = module_h_vector(&InverseSystemModule::from_forms(3, [f]).unwrap()).unwrap();
        let e = h.entries();
        assert!(e.iter().eq(e.iter().rev()));
        assert_eq!(HVector::from_u64s(&[1, 3, 3, 3, 1]).unwrap(), h);
    }

    #[test]
    fn module_json_round_trip() {
        let m = module(3, &["3/2*y1^2*y2 - y3^3", "y1*y2"]);
        let text = serde_json::to_string(&m).unwrap();
        assert_eq!(
            text,
            r#"{"r":3,"generators":{"2":["y1*y2"],"3":["3/2*y1^2*y2 - y3^3"]}}"#
        );
        let back: InverseSystemModule = serde_json::from_str(&text).unwrap();
        assert_eq!(back, m);
    }
}
