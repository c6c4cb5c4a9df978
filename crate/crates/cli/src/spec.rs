//! Turning command-line parameters into a validated [`GroupSpec`].

use clap::Args;
use frobpow::ff::prime_power;
use frobpow::GroupSpec;

use crate::UsageError;

#[derive(Args, Clone, Debug)]
pub struct SpecArgs {
    /// Characteristic of the field.
    #[arg(long)]
    pub p: Option<u64>,
    /// Field order q = p^r; may replace --p/--r.
    #[arg(long)]
    pub q: Option<u64>,
    /// Extension degree (default 1).
    #[arg(long)]
    pub r: Option<u32>,
    /// Dimension of the space.
    #[arg(long)]
    pub n: usize,
    /// Dimension of the transvection root space (default n - 1 over F_p, 0 otherwise).
    #[arg(long)]
    pub ell: Option<usize>,
    /// Order of the semisimple part (default 1).
    #[arg(long)]
    pub e: Option<u64>,
    /// Use the full pointwise stabilizer of the hyperplane.
    #[arg(long)]
    pub full_stabilizer: bool,
}

/// `(p, r)` from `--p/--r` or `--q`, checked for consistency.
pub fn field_params(p: Option<u64>, q: Option<u64>, r: Option<u32>) -> Result<(u64, u32), UsageError> {
    match (p, q) {
        (None, None) => Err(UsageError("one of --p or --q is required".into())),
        (p, Some(q)) => {
            let (qp, qr) = prime_power(q).ok_or_else(|| UsageError(format!("q = {q} is not a prime power")))?;
            if p.is_some_and(|p| p != qp) || r.is_some_and(|r| r != qr) {
                return Err(UsageError(format!("--q {q} conflicts with --p/--r")));
            }
            Ok((qp, qr))
        }
        (Some(p), None) => Ok((p, r.unwrap_or(1))),
    }
}

impl SpecArgs {
    pub fn field(&self) -> Result<(u64, u32), UsageError> {
        field_params(self.p, self.q, self.r)
    }

    pub fn resolve(&self) -> anyhow::Result<GroupSpec> {
        let (p, r) = self.field()?;
        let n = self.n;
        let spec = if self.full_stabilizer {
            let mut spec = GroupSpec::full_stabilizer(p, r, n);
            spec.ell = self.ell.unwrap_or(spec.ell);
            spec.e = self.e.unwrap_or(spec.e);
            spec
        } else {
            let default_ell = if r == 1 { n.saturating_sub(1) } else { 0 };
            GroupSpec { p, r, n, ell: self.ell.unwrap_or(default_ell), e: self.e.unwrap_or(1), full_stabilizer: false }
        };
        spec.validate()?;
        Ok(spec)
    }
}
