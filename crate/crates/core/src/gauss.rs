//! Jointly Gaussian mutual information for the signaling scheme.
//!
//! Six independent base variables `(U11, U12, U21, U22, N1, N2)` are mapped
//! linearly onto `Θ = (M11, M21, M12, M22, Y1, Y2)`. Every information term
//! is then a ratio of principal minors of `Σ = A diag(v) Aᵀ`.

use core::fmt;
use core::ops::BitOr;

use crate::linalg::{self, Mat6};
use crate::model::{ensure_valid, ChannelParams, SignalingParams};
use crate::{Error, Result};

/// Rounding window below zero that is still reported as zero information.
pub const MI_NEGATIVE_TOLERANCE: f64 = 1e-9;

const LN_2: f64 = core::f64::consts::LN_2;

/// Components of `Θ`, in covariance order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum Component {
    M11 = 0,
    M21 = 1,
    M12 = 2,
    M22 = 3,
    Y1 = 4,
    Y2 = 5,
}

impl Component {
    pub const ALL: [Component; 6] = [
        Component::M11,
        Component::M21,
        Component::M12,
        Component::M22,
        Component::Y1,
        Component::Y2,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn label(self) -> &'static str {
        LABELS[self.index()]
    }
}

pub const LABELS: [&str; 6] = ["M11", "M21", "M12", "M22", "Y1", "Y2"];

/// Base variables in column order of [`LinearMap::coefficients`].
pub const BASE_LABELS: [&str; 6] = ["U11", "U12", "U21", "U22", "N1", "N2"];

/// A subset of the components of `Θ`.
#[derive(Clone, Copy, PartialEq, Eq, Default, Hash)]
pub struct ComponentSet(u8);

impl ComponentSet {
    pub const EMPTY: ComponentSet = ComponentSet(0);

    pub fn of(items: &[Component]) -> Self {
        items.iter().fold(Self::EMPTY, |s, &c| s | c)
    }

    pub fn contains(self, c: Component) -> bool {
        self.0 & (1 << c as u8) != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_disjoint(self, other: ComponentSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn without(self, other: ComponentSet) -> Self {
        ComponentSet(self.0 & !other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = Component> {
        Component::ALL.into_iter().filter(move |&c| self.contains(c))
    }

    fn indices(self, buf: &mut [usize; 6]) -> &[usize] {
        let mut n = 0;
        for c in self.iter() {
            buf[n] = c.index();
            n += 1;
        }
        &buf[..n]
    }
}

impl From<Component> for ComponentSet {
    fn from(c: Component) -> Self {
        ComponentSet(1 << c as u8)
    }
}

impl<const N: usize> From<[Component; N]> for ComponentSet {
    fn from(items: [Component; N]) -> Self {
        ComponentSet::of(&items)
    }
}

impl<T: Into<ComponentSet>> BitOr<T> for ComponentSet {
    type Output = ComponentSet;
    fn bitor(self, rhs: T) -> ComponentSet {
        ComponentSet(self.0 | rhs.into().0)
    }
}

impl BitOr<Component> for Component {
    type Output = ComponentSet;
    fn bitor(self, rhs: Component) -> ComponentSet {
        ComponentSet::from(self) | rhs
    }
}

impl fmt::Debug for ComponentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(Component::label)).finish()
    }
}

/// Linear map from the base variables to `Θ`, plus the transmitted signals.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearMap {
    /// Row `i` expresses component `i` of `Θ` in the base variables.
    pub coefficients: Mat6,
    /// Variances `(P11, P12, P21, P22, N1, N2)`.
    pub base_variances: [f64; 6],
    /// Rows for `X1` and `X2` over the same base.
    pub transmit_rows: [[f64; 6]; 2],
}

impl LinearMap {
    /// `A diag(v) Aᵀ`.
    pub fn covariance(&self) -> JointCovariance {
        JointCovariance {
            sigma: gram(&self.coefficients, &self.base_variances),
        }
    }

    /// Covariance of `(X1, X2)`; its diagonal is the transmit power.
    pub fn transmit_covariance(&self) -> [[f64; 2]; 2] {
        let mut out = [[0.0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = (0..6)
                    .map(|k| {
                        self.transmit_rows[i][k] * self.transmit_rows[j][k] * self.base_variances[k]
                    })
                    .sum();
            }
        }
        out
    }
}

fn gram(a: &Mat6, v: &[f64; 6]) -> Mat6 {
    let mut s = [[0.0; 6]; 6];
    for i in 0..6 {
        for j in i..6 {
            let x: f64 = (0..6).map(|k| a[i][k] * a[j][k] * v[k]).sum();
            s[i][j] = x;
            s[j][i] = x;
        }
    }
    s
}

/// Covariance `E[ΘΘᵀ]` in the order of [`Component::ALL`].
#[derive(Debug, Clone, PartialEq)]
pub struct JointCovariance {
    sigma: Mat6,
}

impl JointCovariance {
    /// Wraps an externally supplied matrix after checking symmetry and
    /// positive semidefiniteness.
    pub fn from_matrix(sigma: Mat6) -> Result<Self> {
        let cov = JointCovariance { sigma };
        cov.check_psd()?;
        Ok(cov)
    }

    pub fn sigma(&self) -> &Mat6 {
        &self.sigma
    }

    pub fn variance(&self, c: Component) -> f64 {
        self.sigma[c.index()][c.index()]
    }

    pub fn trace(&self) -> f64 {
        (0..6).map(|i| self.sigma[i][i]).sum()
    }

    /// Symmetric to 1e-12 relative, eigenvalues ≥ −1e-9·trace.
    pub fn check_psd(&self) -> Result<()> {
        let scale = self
            .sigma
            .iter()
            .flatten()
            .fold(0.0f64, |m, v| m.max(v.abs()));
        if !self.sigma.iter().flatten().all(|v| v.is_finite()) {
            return Err(Error::NotPsd("non-finite entry"));
        }
        for i in 0..6 {
            for j in (i + 1)..6 {
                if (self.sigma[i][j] - self.sigma[j][i]).abs() > 1e-12 * scale {
                    return Err(Error::NotPsd("not symmetric"));
                }
            }
        }
        let ev = linalg::symmetric_eigenvalues(&self.sigma, 6);
        if ev[0] < -1e-9 * self.trace() {
            return Err(Error::NotPsd("negative eigenvalue"));
        }
        Ok(())
    }

    /// PSD plus `Var(Y1) ≥ N1`, `Var(Y2) ≥ N2`.
    pub fn check(&self, channel: &ChannelParams) -> Result<()> {
        self.check_psd()?;
        let slack = |n: f64| n * (1.0 - 1e-12);
        if self.variance(Component::Y1) < slack(channel.n1) {
            return Err(Error::NotPsd("Var(Y1) below N1"));
        }
        if self.variance(Component::Y2) < slack(channel.n2) {
            return Err(Error::NotPsd("Var(Y2) below N2"));
        }
        Ok(())
    }

    /// Components with exactly zero variance. They are constants and carry no
    /// information; [`crate::bounds`] drops them before evaluating bounds.
    pub fn constants(&self) -> ComponentSet {
        Component::ALL
            .into_iter()
            .filter(|&c| self.variance(c) == 0.0)
            .fold(ComponentSet::EMPTY, |s, c| s | c)
    }

    fn ln_det(&self, set: ComponentSet) -> Result<f64> {
        let mut buf = [0usize; 6];
        linalg::ln_det_principal(&self.sigma, set.indices(&mut buf))
    }
}

/// Builds the linear map and covariance of the Gaussian scheme:
///
/// ```text
/// M11 = U11 + γ1 U12            X1 = U11 + U12
/// M12 = U12                     X2 = U21 + U22 + k U11,  k = sqrt((1-β) P2 / P11)
/// M21 = U21                     Y1 = (1+θ) U11 + U12 + α21 (U21 + U22) + N1
/// M22 = U22 + γ2 (U21 + η U11)  Y2 = η U11 + α12 U12 + (U21 + U22) + N2
/// ```
///
/// with `θ = α21 k` and `η = α12 + k`, so that `Y1 = X1 + α21 X2 + N1` and
/// `Y2 = α12 X1 + X2 + N2` hold row by row. `M22` is dirty-paper coded
/// against everything Tx 2 knows that reaches Rx 2.
pub fn assemble(
    channel: &ChannelParams,
    sig: &SignalingParams,
) -> Result<(LinearMap, JointCovariance)> {
    ensure_valid(channel, sig)?;
    let k = sig.reinforcement(channel)?;
    let theta = channel.alpha21 * k;
    let eta = channel.alpha12 + k;
    let (a12, a21) = (channel.alpha12, channel.alpha21);
    let (g1, g2) = (sig.gamma1, sig.gamma2);

    //                U11          U12  U21      U22  N1   N2
    let coefficients = [
        [1.0, g1, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0, 0.0, 0.0],
        [g2 * eta, 0.0, g2, 1.0, 0.0, 0.0],
        [1.0 + theta, 1.0, a21, a21, 1.0, 0.0],
        [eta, a12, 1.0, 1.0, 0.0, 1.0],
    ];
    let transmit_rows = [
        [1.0, 1.0, 0.0, 0.0, 0.0, 0.0],
        [k, 0.0, 1.0, 1.0, 0.0, 0.0],
    ];
    let map = LinearMap {
        coefficients,
        base_variances: [sig.p11, sig.p12, sig.p21, sig.p22, channel.n1, channel.n2],
        transmit_rows,
    };
    let cov = map.covariance();
    Ok((map, cov))
}

fn clamp_information(raw_nats: f64) -> Result<f64> {
    let bits = raw_nats / LN_2;
    if bits >= 0.0 {
        Ok(bits)
    } else if bits >= -MI_NEGATIVE_TOLERANCE {
        Ok(0.0)
    } else {
        Err(Error::NotPsd("negative mutual information"))
    }
}

/// `I(A; B)` in bits: `½ log2(det Σ_A det Σ_B / det Σ_{A∪B})`.
pub fn mutual_information(
    cov: &JointCovariance,
    a: impl Into<ComponentSet>,
    b: impl Into<ComponentSet>,
) -> Result<f64> {
    let (a, b) = (a.into(), b.into());
    if a.is_empty() || b.is_empty() || !a.is_disjoint(b) {
        return Err(Error::BadIndexSets);
    }
    let raw = 0.5 * (cov.ln_det(a)? + cov.ln_det(b)? - cov.ln_det(a | b)?);
    clamp_information(raw)
}

/// `I(A; B | C)` in bits, from the four minors of `A∪C`, `B∪C`, `C` and
/// `A∪B∪C`. An empty `C` gives [`mutual_information`].
pub fn conditional_mutual_information(
    cov: &JointCovariance,
    a: impl Into<ComponentSet>,
    b: impl Into<ComponentSet>,
    c: impl Into<ComponentSet>,
) -> Result<f64> {
    let (a, b, c) = (a.into(), b.into(), c.into());
    if a.is_empty() || b.is_empty() || !a.is_disjoint(b) || !a.is_disjoint(c) || !b.is_disjoint(c)
    {
        return Err(Error::BadIndexSets);
    }
    let raw = 0.5
        * (cov.ln_det(a | c)? + cov.ln_det(b | c)? - cov.ln_det(c)? - cov.ln_det(a | b | c)?);
    clamp_information(raw)
}
