//! The eleven chromatic 1-norms and their asymptotic constants.
//!
//! Only five norms are measured directly: `dom0`, `dom1` (both colors' own
//! filtrations, summed), `cod0`, `cod1` (the full set) and `rel1` (the lunar
//! sweep). The rest follow from the short exact sequences, in this order:
//! `im0 = cod0`, `ker0 = dom0 - im0`, `cok1 = rel1 - ker0`,
//! `im1 = cod1 - cok1`, `ker1 = dom1 - im1`, `rel2 = ker1`.

use alloc::vec::Vec;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SixPackNorms {
    pub dom0: f64,
    pub dom1: f64,
    pub cod0: f64,
    pub cod1: f64,
    pub rel1: f64,
    pub rel2: f64,
    pub ker0: f64,
    pub ker1: f64,
    pub im0: f64,
    pub im1: f64,
    pub cok1: f64,
}

/// Tolerance below zero accepted for a derived norm.
pub const NEGATIVE_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SixPackError {
    #[error("derived norm {name} = {value} is negative")]
    Negative { name: &'static str, value: f64 },
    #[error("{0} must lie in [0.6289, 0.7072]")]
    OutsideStrip(f64),
}

/// What to do with a negative derived norm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NegativePolicy {
    /// Return the norms and list the offenders.
    #[default]
    Warn,
    Fail,
}

impl SixPackNorms {
    pub fn named(&self) -> [(&'static str, f64); 11] {
        [
            ("dom0", self.dom0),
            ("dom1", self.dom1),
            ("cod0", self.cod0),
            ("cod1", self.cod1),
            ("rel1", self.rel1),
            ("rel2", self.rel2),
            ("ker0", self.ker0),
            ("ker1", self.ker1),
            ("im0", self.im0),
            ("im1", self.im1),
            ("cok1", self.cok1),
        ]
    }

    /// Largest violation of the six exact-sequence relations (the
    /// vanishing `cok0` and `cok2` are implicit).
    pub fn relation_residual(&self) -> f64 {
        let r = [
            self.ker0 + self.im0 - self.dom0,
            self.im0 - self.cod0,
            self.ker1 + self.im1 - self.dom1,
            self.im1 + self.cok1 - self.cod1,
            self.cok1 + self.ker0 - self.rel1,
            self.ker1 - self.rel2,
        ];
        r.iter().fold(0.0f64, |m, x| m.max(x.abs()))
    }

    /// Names and values of norms below `-NEGATIVE_SLACK`.
    pub fn negatives(&self) -> Vec<(&'static str, f64)> {
        self.named()
            .into_iter()
            .filter(|&(_, v)| v < -NEGATIVE_SLACK)
            .collect()
    }
}

fn chain(dom0: f64, dom1: f64, cod0: f64, cod1: f64, rel1: f64) -> SixPackNorms {
    let im0 = cod0;
    let ker0 = dom0 - im0;
    let cok1 = rel1 - ker0;
    let im1 = cod1 - cok1;
    let ker1 = dom1 - im1;
    SixPackNorms {
        dom0,
        dom1,
        cod0,
        cod1,
        rel1,
        rel2: ker1,
        ker0,
        ker1,
        im0,
        im1,
        cok1,
    }
}

/// Completes the six-pack; fails on any norm below `-1e-9`.
pub fn derive_norms(dom0: f64, dom1: f64, cod0: f64, cod1: f64, rel1: f64) -> Result<SixPackNorms, SixPackError> {
    let (norms, _) = derive_norms_with(dom0, dom1, cod0, cod1, rel1, NegativePolicy::Fail)?;
    Ok(norms)
}

/// Like [`derive_norms`], but under [`NegativePolicy::Warn`] hands the
/// negative norms back instead of failing.
pub fn derive_norms_with(
    dom0: f64,
    dom1: f64,
    cod0: f64,
    cod1: f64,
    rel1: f64,
    policy: NegativePolicy,
) -> Result<(SixPackNorms, Vec<(&'static str, f64)>), SixPackError> {
    let norms = chain(dom0, dom1, cod0, cod1, rel1);
    let bad = norms.negatives();
    if policy == NegativePolicy::Fail {
        if let Some(&(name, value)) = bad.first() {
            return Err(SixPackError::Negative { name, value });
        }
    }
    Ok((norms, bad))
}

/// The eleven constants in front of `√n` as functions of `c` and `cL`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantTable {
    pub ker0: f64,
    pub rel1: f64,
    pub cok1: f64,
    pub ker1: f64,
    pub rel2: f64,
    pub dom0: f64,
    pub im0: f64,
    pub cod0: f64,
    pub dom1: f64,
    pub im1: f64,
    pub cod1: f64,
}

const SQRT2: f64 = core::f64::consts::SQRT_2;

pub fn norm_constants(c: f64, c_l: f64) -> ConstantTable {
    let s = SQRT2 - 1.0;
    ConstantTable {
        ker0: 0.5 * s * c,
        rel1: 0.5 * c_l,
        cok1: 0.5 * c_l - 0.5 * s * c,
        ker1: 0.5 * c_l - 0.25 * s,
        rel2: 0.5 * c_l - 0.25 * s,
        dom0: 0.5 * SQRT2 * c,
        im0: 0.5 * c,
        cod0: 0.5 * c,
        dom1: SQRT2 * (0.5 * c - 0.25),
        im1: 0.5 * SQRT2 * c - 0.25 - 0.5 * c_l,
        cod1: 0.5 * c - 0.25,
    }
}

pub const STRIP: (f64, f64) = (0.6289, 0.7072);

/// Checks `cod1 < dom1 <= ker0 < im0 = cod0 < dom0` at `c`. The upper end
/// of the strip is the printed rounding of `√2/2`, where `dom1 = ker0`;
/// values past `√2/2` but within that rounding are read as `√2/2`.
pub fn ordering_check(c: f64) -> Result<bool, SixPackError> {
    if !(STRIP.0..=STRIP.1).contains(&c) {
        return Err(SixPackError::OutsideStrip(c));
    }
    let c = c.min(0.5 * SQRT2);
    let t = norm_constants(c, 0.0);
    let tol = 1e-12;
    Ok(t.cod1 < t.dom1 && t.dom1 <= t.ker0 + tol && t.ker0 < t.im0 && t.im0 == t.cod0 && t.cod0 < t.dom0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_arithmetic() {
        let n = derive_norms(2.0, 1.0, 1.5, 0.5, 0.8).unwrap();
        let close = |a: f64, b: f64| (a - b).abs() < 1e-15;
        assert!(close(n.ker0, 0.5));
        assert!(close(n.cok1, 0.3));
        assert!(close(n.im1, 0.2));
        assert!(close(n.ker1, 0.8));
        assert!(close(n.rel2, 0.8));
        assert!(n.relation_residual() < 1e-15);
    }

    #[test]
    fn no_kernel_when_domain_equals_codomain() {
        let n = derive_norms(1.2, 0.4, 1.2, 0.3, 0.1).unwrap();
        assert_eq!(n.ker0, 0.0);
    }

    #[test]
    fn negative_policy() {
        // rel1 < ker0 forces cok1 < 0; everything else stays positive
        assert!(matches!(
            derive_norms(2.0, 1.0, 1.0, 0.5, 0.9),
            Err(SixPackError::Negative { name: "cok1", .. })
        ));
        let (n, bad) = derive_norms_with(2.0, 1.0, 1.0, 0.5, 0.9, NegativePolicy::Warn).unwrap();
        assert!(n.cok1 < 0.0);
        assert_eq!(bad.len(), 1);
        assert_eq!(bad[0].0, "cok1");
    }

    #[test]
    fn table_edge_cases() {
        let t = norm_constants(0.5 * SQRT2, 0.35);
        assert!((t.ker0 - t.dom1).abs() < 1e-12);
        assert!(norm_constants(0.5, 0.35).cod1.abs() < 1e-12);
        assert!(norm_constants(0.65, 0.5 * (SQRT2 - 1.0)).ker1.abs() < 1e-12);
    }

    #[test]
    fn ordering() {
        assert_eq!(ordering_check(0.65), Ok(true));
        assert_eq!(ordering_check(0.6289), Ok(true));
        assert_eq!(ordering_check(0.7072), Ok(true));
        assert!(ordering_check(0.8).is_err());
        assert!(ordering_check(0.6).is_err());
    }
}
