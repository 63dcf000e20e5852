//! Run configuration loaded from a single JSON document.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::dispersion::FieldParams;
use crate::error::{Error, Result};
use crate::observables::{GeometryKind, GeometrySpec};
use crate::operators::{CommutationTable, Lattice, VacuumRules};
use crate::ring::Bicomplex;
use crate::states::DEFAULT_BASIS_CAP;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeConfig {
    pub delta_k: f64,
    #[serde(rename = "N")]
    pub n: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometryConfig {
    pub kind: GeometryKind,
    #[serde(rename = "L1", default)]
    pub l1: f64,
    #[serde(rename = "L2", default)]
    pub l2: f64,
}

/// All inputs of a run. Every key is optional in the JSON file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub m: f64,
    pub gamma: f64,
    pub geometry: GeometryConfig,
    /// `ρ₁…ρ₄` as `[1, i, j, ij]` components.
    pub rho: [[f64; 4]; 4],
    /// `σ₁…σ₄`, zero unless injected.
    pub sigma: [[f64; 4]; 4],
    /// Lattice used for field commutators and observables.
    pub lattice: LatticeConfig,
    /// Staggered lattice used for states, small enough for truncated bases.
    pub state_lattice: LatticeConfig,
    pub truncation_order: u32,
    pub basis_cap: usize,
    /// Vacuum eigenvalues before the constraints are applied.
    pub lambda1: [f64; 4],
    pub lambda2: [f64; 4],
    pub seed: u64,
    pub output_dir: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            m: 1.0,
            gamma: 0.5,
            geometry: GeometryConfig {
                kind: GeometryKind::FiniteInterval,
                l1: -1.0,
                l2: 1.0,
            },
            rho: [[1.0, 0.0, 0.0, 0.0], [0.0; 4], [0.0; 4], [0.0; 4]],
            sigma: [[0.0; 4]; 4],
            lattice: LatticeConfig { delta_k: 0.1, n: 32 },
            state_lattice: LatticeConfig { delta_k: 0.4, n: 2 },
            truncation_order: 3,
            basis_cap: DEFAULT_BASIS_CAP,
            lambda1: [0.7, 0.2, -0.4, 0.1],
            lambda2: [-0.3, 0.5, 0.6, -0.2],
            seed: 20_240_611,
            output_dir: PathBuf::from("out"),
        }
    }
}

fn ring(c: [f64; 4]) -> Bicomplex {
    Bicomplex::new(c[0], c[1], c[2], c[3])
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_json(&text).map_err(|e| match e {
            Error::Config(msg) => Error::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.m, self.gamma, self.geometry.l1, self.geometry.l2, self.lattice.delta_k, self.state_lattice.delta_k]
            .into_iter()
            .chain(self.rho.iter().flatten().copied())
            .chain(self.sigma.iter().flatten().copied())
            .chain(self.lambda1)
            .chain(self.lambda2)
            .all(f64::is_finite);
        if !finite {
            return Err(Error::Config("numeric fields must be finite".into()));
        }
        self.params()?;
        self.geometry()?;
        self.table()?;
        self.state_table()?;
        if self.basis_cap == 0 {
            return Err(Error::Config("basis_cap must be positive".into()));
        }
        Ok(())
    }

    /// Warning text when the lattice span is short of `5·max(m, γ)`.
    pub fn span_warning(&self) -> Option<String> {
        let span = self.lattice.n as f64 * self.lattice.delta_k;
        let need = 5.0 * self.m.max(self.gamma);
        (span < need).then(|| format!("lattice span N*dk = {span} is below 5*max(m, gamma) = {need}"))
    }

    pub fn params(&self) -> Result<FieldParams> {
        FieldParams::new(self.m, self.gamma, 1).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn geometry(&self) -> Result<GeometrySpec> {
        match self.geometry.kind {
            GeometryKind::InfiniteLine => Ok(GeometrySpec::infinite()),
            GeometryKind::FiniteInterval => {
                GeometrySpec::finite(self.geometry.l1, self.geometry.l2).map_err(|e| Error::Config(e.to_string()))
            }
        }
    }

    fn table_on(&self, lattice: Lattice) -> CommutationTable {
        CommutationTable::constant(self.rho.map(ring), lattice).with_sigma(self.sigma.map(ring))
    }

    /// Table on the unstaggered field lattice.
    pub fn table(&self) -> Result<CommutationTable> {
        let l = Lattice::new(self.lattice.delta_k, self.lattice.n, false).map_err(|e| Error::Config(e.to_string()))?;
        Ok(self.table_on(l))
    }

    /// Table on the staggered state lattice, which avoids `k = 0`.
    pub fn state_table(&self) -> Result<CommutationTable> {
        let l = Lattice::new(self.state_lattice.delta_k, self.state_lattice.n, true)
            .map_err(|e| Error::Config(e.to_string()))?;
        Ok(self.table_on(l))
    }

    pub fn constrained_rules(&self) -> VacuumRules {
        VacuumRules::constrained(ring(self.lambda1), ring(self.lambda2))
    }

    pub fn unconstrained_rules(&self) -> VacuumRules {
        VacuumRules::unconstrained(ring(self.lambda1), ring(self.lambda2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_document_gives_defaults() {
        let c = RunConfig::from_json("{}").unwrap();
        assert_eq!(c, RunConfig::default());
        assert_eq!((c.m, c.gamma, c.lattice.delta_k, c.lattice.n, c.truncation_order), (1.0, 0.5, 0.1, 32, 3));
        // 32 * 0.1 falls short of 5 * m at the defaults.
        assert!(c.span_warning().is_some());
    }

    #[test]
    fn partial_documents_override_keys() {
        let c = RunConfig::from_json(r#"{"gamma": 0, "geometry": {"kind": "infinite_line"}, "lattice": {"delta_k": 0.2, "N": 8}}"#)
            .unwrap();
        assert_eq!(c.gamma, 0.0);
        assert_eq!(c.geometry().unwrap(), GeometrySpec::infinite());
        assert_eq!(c.table().unwrap().lattice.len(), 17);
        assert_eq!(c.m, 1.0);
    }

    #[test]
    fn invalid_documents_are_config_errors() {
        for bad in [
            r#"{"m": -1}"#,
            r#"{"unknown": 3}"#,
            r#"{"geometry": {"kind": "finite_interval", "L1": 2, "L2": 1}}"#,
            r#"{"lattice": {"delta_k": 0, "N": 4}}"#,
            r#"{"basis_cap": 0}"#,
            "not json",
        ] {
            assert!(matches!(RunConfig::from_json(bad), Err(Error::Config(_))), "{bad}");
        }
    }

    #[test]
    fn short_span_warns() {
        let c = RunConfig::from_json(r#"{"m": 4, "lattice": {"delta_k": 0.1, "N": 32}}"#).unwrap();
        assert!(c.span_warning().is_some());
        let c = RunConfig::from_json(r#"{"lattice": {"delta_k": 0.2, "N": 32}}"#).unwrap();
        assert!(c.span_warning().is_none());
    }

    #[test]
    fn sigma_reaches_the_table() {
        let c = RunConfig::from_json(r#"{"sigma": [[0,0,0,0],[0,0.5,0,0],[0,0,0,0],[0,0,0,0]]}"#).unwrap();
        assert!(!crate::operators::pair_commutation_check(&c.table().unwrap()));
        assert!(crate::operators::pair_commutation_check(&RunConfig::default().table().unwrap()));
    }
}
