//! The algebras a session can work in: the two built-in families and file-defined ones.

use std::fmt;
use std::sync::Arc;

use crate::basealg::{AlgebraFile, BaseElement, ValidationReport};
use crate::error::{AlgebraError, Result};
use crate::extension::ExtAlgebra;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InstanceKind {
    QuantumPlane(usize),
    Quaternion,
    File(String),
}

#[derive(Debug, Clone)]
pub struct Instance {
    kind: InstanceKind,
    ext: Arc<ExtAlgebra>,
    validation: ValidationReport,
}

impl Instance {
    /// The reduced quantum plane x·y = q·y·x, x^N = y^N = 1, with y playing τ.
    pub fn quantum_plane(n: usize) -> Result<Self> {
        Self::from_ext(InstanceKind::QuantumPlane(n), ExtAlgebra::quantum_plane(n)?)
    }

    /// ℍ = ℂ[i] with ℂ = span{1, j}, φ = conjugation and τ = i.
    pub fn quaternion() -> Result<Self> {
        Self::from_ext(InstanceKind::Quaternion, ExtAlgebra::quaternions()?)
    }

    /// Builds from an algebra file; the axioms are checked but not enforced here.
    pub fn from_file_text(label: &str, text: &str) -> Result<Self> {
        let (base, sign) = AlgebraFile::parse(text)?.build()?;
        Self::from_ext(InstanceKind::File(label.to_string()), ExtAlgebra::new(base, sign)?)
    }

    /// Parses `quantum-plane:N` or `quaternion`; anything else is not a built-in name.
    pub fn builtin(descriptor: &str) -> Option<Result<Self>> {
        if descriptor == "quaternion" || descriptor == "quaternions" {
            return Some(Self::quaternion());
        }
        let n = descriptor.strip_prefix("quantum-plane:")?;
        Some(match n.parse::<usize>() {
            Ok(n) if n >= 2 => Self::quantum_plane(n),
            _ => Err(AlgebraError::Malformed(format!("bad quantum-plane order {n:?}, expected an integer ≥ 2"))),
        })
    }

    fn from_ext(kind: InstanceKind, ext: Arc<ExtAlgebra>) -> Result<Self> {
        let validation = ext.base().validate();
        Ok(Self { kind, ext, validation })
    }

    pub fn kind(&self) -> &InstanceKind {
        &self.kind
    }

    pub fn ext(&self) -> &Arc<ExtAlgebra> {
        &self.ext
    }

    pub fn validation(&self) -> &ValidationReport {
        &self.validation
    }

    /// The canonical generator: x for the quantum plane, j for ℍ, basis element 1 for files.
    pub fn default_coordinate(&self) -> Option<BaseElement> {
        let base = self.ext.base();
        (base.dim() >= 2).then(|| BaseElement::basis(base, 1))
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            InstanceKind::QuantumPlane(n) => write!(f, "quantum-plane:{n}"),
            InstanceKind::Quaternion => write!(f, "quaternion"),
            InstanceKind::File(label) => write!(f, "{label}"),
        }
    }
}
