//! Experiment configuration, read from TOML.

use serde::{Deserialize, Serialize};
use std::path::Path;

use crate::error::{Error, Result};
use crate::field::{FieldElement, NumberField, NumberFieldSpec};
use crate::fields;
use crate::fourier::TorusSet;
use crate::ideal::FractionalIdeal;
use crate::region::Region;

/// A shipped reference field, a real quadratic field by discriminant
/// radicand, or an explicit polynomial with unit data.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldConfig {
    pub reference: Option<String>,
    pub real_quadratic: Option<i64>,
    pub name: Option<String>,
    /// Monic, lowest degree first.
    pub polynomial: Option<Vec<i64>>,
    /// Rows of `[num, den]` pairs giving the integral basis in powers of the root.
    pub basis_change: Option<Vec<Vec<[i64; 2]>>>,
    #[serde(default)]
    pub units: Vec<Vec<i64>>,
    pub torsion_generator: Option<Vec<i64>>,
    pub torsion_order: Option<u64>,
    pub regulator_reference: Option<f64>,
}

fn wide(v: &[i64]) -> Vec<i128> {
    v.iter().map(|&x| x as i128).collect()
}

impl FieldConfig {
    pub fn reference(name: &str) -> Self {
        FieldConfig {
            reference: Some(name.to_string()),
            ..Default::default()
        }
    }

    pub fn spec(&self) -> Result<NumberFieldSpec> {
        if let Some(r) = &self.reference {
            return fields::reference_spec(r);
        }
        if let Some(d) = self.real_quadratic {
            return fields::real_quadratic_spec(d as i128);
        }
        let poly = self.polynomial.as_ref().ok_or_else(|| {
            Error::Config("field needs `reference`, `real_quadratic` or `polynomial`".into())
        })?;
        let n = poly.len().saturating_sub(1);
        let mut one = vec![0i128; n];
        if n > 0 {
            one[0] = 1;
        }
        let mut minus_one = one.clone();
        if n > 0 {
            minus_one[0] = -1;
        }
        Ok(NumberFieldSpec {
            name: self
                .name
                .clone()
                .unwrap_or_else(|| format!("Q[x]/{poly:?}")),
            defining_polynomial: wide(poly),
            basis_change: self.basis_change.as_ref().map(|rows| {
                rows.iter()
                    .map(|r| r.iter().map(|[a, b]| (*a as i128, *b as i128)).collect())
                    .collect()
            }),
            fundamental_units: self.units.iter().map(|u| wide(u)).collect(),
            torsion_generator: self
                .torsion_generator
                .as_deref()
                .map(wide)
                .unwrap_or(minus_one),
            torsion_order: self.torsion_order.unwrap_or(2),
            class_number: 1,
            class_representatives: vec![vec![one]],
            regulator_reference: self.regulator_reference,
        })
    }

    pub fn load(&self) -> Result<NumberField> {
        NumberField::load(self.spec()?)
    }
}

/// `q = 3` for a rational integer, or `q = [[3, 0], [1, 1]]` for generators.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IdealConfig {
    Integer(i64),
    Generators(Vec<Vec<i64>>),
}

impl IdealConfig {
    pub fn build(&self, field: &NumberField) -> Result<FractionalIdeal> {
        match self {
            IdealConfig::Integer(k) => FractionalIdeal::from_integer(field, *k as i128),
            IdealConfig::Generators(g) => {
                let gens: Vec<FieldElement> = g
                    .iter()
                    .map(|c| field.element(&wide(c)))
                    .collect::<Result<_>>()?;
                FractionalIdeal::from_generators(field, &gens, 1)
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CharacterConfig {
    #[default]
    Trivial,
    /// Index into the character table of the component group mod `q`.
    Finite(usize),
}

/// An injected real character and exceptional zero `beta`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SiegelConfig {
    pub character: usize,
    pub beta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    Pit,
    Mitsui,
    SiegelWalfiszQ,
    ProofPath,
    Properties,
}

/// How the configured region grows with the schedule entry `N`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scaling {
    /// The region is given at `N = 1` and scaled by `N^{1/n}`.
    #[default]
    Norm,
    /// The same region for every row.
    Fixed,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    pub path: Option<String>,
    pub format: Option<Format>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProofPathConfig {
    /// Cubes of side `1 / y2` on the norm-one torus.
    pub y2: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SectorsConfig {
    pub x: u64,
    pub y: u64,
    /// Optional convex body for interior selection.
    pub body: Option<Region>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FourierConfig {
    pub set: TorusSet,
    pub dimension: usize,
    #[serde(default = "one_usize")]
    pub components: usize,
    pub bandwidth: usize,
    pub margin: f64,
}

fn one_usize() -> usize {
    1
}

fn one_f64() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub kind: Option<ExperimentKind>,
    #[serde(default)]
    pub field: FieldConfig,
    pub a: Option<IdealConfig>,
    pub q: Option<IdealConfig>,
    /// Integral-basis coordinates of the congruence representative.
    pub alpha: Option<Vec<i64>>,
    pub region: Option<Region>,
    #[serde(default)]
    pub region_scaling: Scaling,
    #[serde(default)]
    pub schedule: Vec<f64>,
    #[serde(default)]
    pub character: CharacterConfig,
    pub siegel: Option<SiegelConfig>,
    /// The constant `c` in the modulus budget `N(q) < exp(sqrt(log N) / c)`.
    #[serde(default = "one_f64")]
    pub budget_c: f64,
    /// `--check` threshold on the final `|rel_error|`.
    pub tolerance: Option<f64>,
    pub bound: Option<u64>,
    pub frequency_bound: Option<i64>,
    pub proof_path: Option<ProofPathConfig>,
    pub sectors: Option<SectorsConfig>,
    pub fourier: Option<FourierConfig>,
    pub suites: Option<Vec<String>>,
    #[serde(default)]
    pub output: OutputConfig,
}

impl Config {
    pub fn from_toml(text: &str) -> Result<Self> {
        let c: Config = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if self.schedule.iter().any(|&n| !(n.is_finite() && n > 0.0)) {
            return Err(Error::Config("schedule entries must be positive".into()));
        }
        if self.schedule.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config("schedule must be strictly increasing".into()));
        }
        if let Some(s) = &self.siegel {
            if !(s.beta > 0.0 && s.beta < 1.0) {
                return Err(Error::Config(format!("beta = {} is not in (0, 1)", s.beta)));
            }
        }
        if self.budget_c <= 0.0 {
            return Err(Error::Config("budget_c must be positive".into()));
        }
        Ok(())
    }

    /// A config for `field` with everything else defaulted.
    pub fn for_field(field: FieldConfig) -> Self {
        Config {
            kind: None,
            field,
            a: None,
            q: None,
            alpha: None,
            region: None,
            region_scaling: Scaling::Norm,
            schedule: Vec::new(),
            character: CharacterConfig::Trivial,
            siegel: None,
            budget_c: 1.0,
            tolerance: None,
            bound: None,
            frequency_bound: None,
            proof_path: None,
            sectors: None,
            fourier: None,
            suites: None,
            output: OutputConfig::default(),
        }
    }

    pub fn ideal_a(&self, field: &NumberField) -> Result<FractionalIdeal> {
        match &self.a {
            Some(a) => a.build(field),
            None => Ok(FractionalIdeal::unit(field)),
        }
    }

    pub fn ideal_q(&self, field: &NumberField) -> Result<FractionalIdeal> {
        match &self.q {
            Some(q) => q.build(field),
            None => Ok(FractionalIdeal::unit(field)),
        }
    }

    pub fn alpha_element(&self, field: &NumberField) -> Result<Option<FieldElement>> {
        self.alpha
            .as_ref()
            .map(|c| field.element(&wide(c)))
            .transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_full_config() {
        let c = Config::from_toml(
            r#"
kind = "mitsui"
q = 3
alpha = [1, 0]
schedule = [1e4, 1e5]
character = { finite = 1 }
siegel = { character = 1, beta = 0.9 }

[field]
reference = "gaussian"

[region]
kind = "ball"
center = [0.0, 0.0]
radius = 1.0
"#,
        )
        .unwrap();
        assert_eq!(c.kind, Some(ExperimentKind::Mitsui));
        assert_eq!(c.q, Some(IdealConfig::Integer(3)));
        assert_eq!(c.character, CharacterConfig::Finite(1));
        let f = c.field.load().unwrap();
        assert_eq!(c.ideal_q(&f).unwrap().norm().unwrap(), 9.into());
    }

    #[test]
    fn rejects_bad_schedules() {
        assert!(Config::from_toml("schedule = [10.0, 5.0]").is_err());
        assert!(Config::from_toml("schedule = [0.0]").is_err());
        assert!(Config::from_toml("unknown = 1").is_err());
        assert!(Config::from_toml("siegel = { character = 0, beta = 1.5 }").is_err());
    }

    #[test]
    fn explicit_polynomial() {
        let c = Config::from_toml("[field]\npolynomial = [-3, 0, 1]\nunits = [[2, 1]]\n").unwrap();
        let f = c.field.load().unwrap();
        assert_eq!(f.r1, 2);
        assert!((f.regulator - (2.0 + 3f64.sqrt()).ln()).abs() < 1e-12);
    }
}
