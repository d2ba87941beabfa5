//! Command results. Every report serializes to JSON and renders as text
//! from the same fields.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};
use socle::inverse_systems::InverseSystemModule;
use socle::json;
use socle::monomial::{Monomial, MonomialIdeal};
use socle::oracle::SocleCatalog;
use socle::resolution::BettiTable;
use socle::uniqueness::{UniquenessVerdict, Witness, WitnessPayload};
use socle::vectors::{h_array, s_array};
use socle::{HVector, SocleVector};

fn spaced(v: &[BigUint]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn listed<T: ToString>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

fn write_ideal_generators(
    f: &mut fmt::Formatter<'_>,
    ideal: &MonomialIdeal,
    indent: &str,
) -> fmt::Result {
    for (d, gens) in ideal.all_generators() {
        writeln!(f, "{indent}degree {d}: {}", listed(&gens))?;
    }
    Ok(())
}

fn write_module_generators(
    f: &mut fmt::Formatter<'_>,
    m: &InverseSystemModule,
    indent: &str,
) -> fmt::Result {
    for (d, forms) in m.generators() {
        writeln!(f, "{indent}degree {d}: {}", listed(forms))?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionTerm {
    #[serde(with = "json::uint")]
    pub top: BigUint,
    pub bottom: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftRow {
    pub by: i64,
    #[serde(with = "json::opt_uint")]
    pub value: Option<BigUint>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpandReport {
    #[serde(with = "json::uint")]
    pub n: BigUint,
    pub i: usize,
    pub terms: Vec<ExpansionTerm>,
    pub shifts: Vec<ShiftRow>,
}

impl fmt::Display for ExpandReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .terms
            .iter()
            .map(|t| format!("C({},{})", t.top, t.bottom))
            .collect();
        let body = if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        };
        writeln!(f, "{} = {body}", self.n)?;
        writeln!(f, "shift  value")?;
        for row in &self.shifts {
            let value = row
                .value
                .as_ref()
                .map_or("undefined".to_string(), ToString::to_string);
            writeln!(f, "{:>5}  {value}", format!("{:+}", row.by))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    #[serde(with = "json::uint")]
    pub h_d: BigUint,
    pub d: usize,
    #[serde(with = "json::uint")]
    pub bound: BigUint,
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.bound)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VectorPair {
    #[serde(with = "s_array")]
    pub s: SocleVector,
    #[serde(with = "h_array")]
    pub h: HVector,
}

/// Output of `minh`: prints the h-vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MinHReport(pub VectorPair);

impl fmt::Display for MinHReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", spaced(self.0.h.entries()))
    }
}

/// Output of `maxsocle`: prints the socle-vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MaxSocleReport(pub VectorPair);

impl fmt::Display for MaxSocleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", spaced(self.0.s.entries()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinCodimReport {
    #[serde(with = "s_array")]
    pub s: SocleVector,
    #[serde(with = "json::uint")]
    pub codimension: BigUint,
}

impl fmt::Display for MinCodimReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.codimension)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LexIdealReport {
    #[serde(with = "h_array")]
    pub h: HVector,
    pub ideal: MonomialIdeal,
}

impl fmt::Display for LexIdealReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "lex-segment ideal for {} in {} variables",
            self.h,
            self.ideal.num_vars()
        )?;
        for (d, piece) in self.ideal.pieces().iter().enumerate() {
            if !piece.is_empty() {
                let monos: Vec<&Monomial> = piece.iter().rev().collect();
                writeln!(f, "I_{d}: {}", listed(&monos))?;
            }
        }
        writeln!(f, "minimal generators:")?;
        write_ideal_generators(f, &self.ideal, "  ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiReport {
    #[serde(with = "h_array")]
    pub h: HVector,
    pub table: BettiTable,
    pub identity_holds: bool,
    #[serde(with = "json::int_seq")]
    pub residual: Vec<BigInt>,
}

impl fmt::Display for BettiReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.table)?;
        if self.identity_holds {
            writeln!(f, "series identity: holds")
        } else {
            let res: Vec<String> = self.residual.iter().map(ToString::to_string).collect();
            writeln!(f, "series identity: FAILS, residual {}", res.join(" "))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CancellationsReport {
    #[serde(with = "h_array")]
    pub h: HVector,
    pub r: usize,
    pub shifts: Vec<usize>,
    pub socle_degrees: Vec<usize>,
}

impl fmt::Display for CancellationsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.shifts.is_empty() {
            return writeln!(f, "no possible cancellations");
        }
        for (d, sd) in self.shifts.iter().zip(&self.socle_degrees) {
            writeln!(f, "shift {d} (socle degree {sd})")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForcedReport {
    #[serde(with = "h_array")]
    pub h: HVector,
    pub d: usize,
    #[serde(with = "json::opt_uint")]
    pub alpha: Option<BigUint>,
    #[serde(with = "json::opt_uint")]
    pub alpha_maximal_growth: Option<BigUint>,
}

impl fmt::Display for ForcedReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.alpha {
            Some(a) => writeln!(f, "alpha = {a}")?,
            None => writeln!(f, "alpha: not forced at degree {}", self.d)?,
        }
        match &self.alpha_maximal_growth {
            Some(a) => writeln!(f, "maximal-growth criterion: alpha = {a}"),
            None => writeln!(f, "maximal-growth criterion: does not apply"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompressedReport {
    #[serde(with = "json::uint")]
    pub m: BigUint,
    pub d: usize,
    pub r: usize,
    #[serde(with = "h_array")]
    pub h: HVector,
}

impl fmt::Display for CompressedReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", spaced(self.h.entries()))
    }
}

fn write_witness(f: &mut fmt::Formatter<'_>, w: &Witness) -> fmt::Result {
    match &w.payload {
        WitnessPayload::MonomialIdeal(ideal) => write_ideal_generators(f, ideal, "  "),
        WitnessPayload::InverseSystem(m) => write_module_generators(f, m, "  "),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniqueReport {
    pub verdict: UniquenessVerdict,
    pub verified: Vec<bool>,
}

impl fmt::Display for UniqueReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = &self.verdict;
        writeln!(f, "h-vector: {}", v.h)?;
        writeln!(f, "maximum socle-vector: {}", v.max_socle)?;
        writeln!(f, "status: {}", v.status)?;
        if !v.reasons.is_empty() {
            writeln!(f, "reasons: {}", v.reasons.join(", "))?;
        }
        for c in &v.conditions {
            writeln!(f, "{} predicts {}", c.condition, c.predicted)?;
        }
        for (k, w) in v.witnesses.iter().enumerate() {
            let check = if self.verified.get(k).copied().unwrap_or(false) {
                "verified"
            } else {
                "NOT verified"
            };
            writeln!(
                f,
                "witness {}: {} with socle-vector {}, {check}",
                k + 1,
                w.kind(),
                w.s
            )?;
            write_witness(f, w)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CatalogReport(pub SocleCatalog);

impl fmt::Display for CatalogReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.0;
        writeln!(f, "h-vector: {} (monomial ideals only)", c.h)?;
        let search = if c.exhaustive {
            "exhaustive"
        } else {
            "out of budget"
        };
        writeln!(f, "search: {search}, {} nodes", c.nodes)?;
        if let Some(n) = &c.ideal_count {
            writeln!(f, "ideals: {n}")?;
        }
        writeln!(f, "socle-vectors: {}", c.len())?;
        for (s, ideal) in &c.examples {
            writeln!(f, "{s}")?;
            write_ideal_generators(f, ideal, "  ")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub witness: Witness,
    pub verified: bool,
    pub error: Option<String>,
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = &self.witness;
        match &self.error {
            None => writeln!(
                f,
                "verified: {} with h-vector {} and socle-vector {}",
                w.kind(),
                w.h,
                w.s
            )?,
            Some(e) => writeln!(f, "rejected: {e}")?,
        }
        write_witness(f, w)
    }
}

/// Re-renders the JSON output of `command` as its text output.
pub fn render_text(command: &str, json_text: &str) -> Result<String, String> {
    fn go<T: serde::de::DeserializeOwned + fmt::Display>(text: &str) -> Result<String, String> {
        serde_json::from_str::<T>(text)
            .map(|r| r.to_string())
            .map_err(|e| e.to_string())
    }
    match command {
        "expand" => go::<ExpandReport>(json_text),
        "bound" => go::<BoundReport>(json_text),
        "minh" => go::<MinHReport>(json_text),
        "maxsocle" => go::<MaxSocleReport>(json_text),
        "mincodim" => go::<MinCodimReport>(json_text),
        "lexideal" => go::<LexIdealReport>(json_text),
        "betti" => go::<BettiReport>(json_text),
        "cancellations" => go::<CancellationsReport>(json_text),
        "unique" => go::<UniqueReport>(json_text),
        "forced" => go::<ForcedReport>(json_text),
        "catalog" => go::<CatalogReport>(json_text),
        "compressed" => go::<CompressedReport>(json_text),
        "verify-witness" => go::<VerifyReport>(json_text),
        other => Err(format!("unknown command {other:?}")),
    }
}
