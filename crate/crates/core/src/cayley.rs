//! The Hessian and the second Hessian of a plane curve.
//!
//! For `Gamma` of degree `d`:
//!
//! ```text
//! H2 = (12d^2 - 54d + 57) H Jac(Gamma, H, Omega_H)
//!    + (d - 2)(12d - 27)  H Jac(Gamma, H, Omega_Gamma)
//!    - 20 (d - 2)^2         Jac(Gamma, H, Psi)
//! ```
//!
//! where the third rows of the first two Jacobians are the gradient triples
//! `(Omega_H)_u`, `(Omega_Gamma)_u` assembled below, and the third row of the
//! last one is the genuine gradient of `Psi`. The historical coefficient in the
//! last line was 40; [`Coefficients::with_psi_factor`] reproduces it for
//! mutation checks.

use thiserror::Error;

use crate::polyring::{hessian_matrix, jacobian_with_row, HomPoly, PolyError, PolyMatrix, Var};
use crate::scalar::Ring;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CayleyError {
    #[error("curve degree {found:?} is below the required {required}")]
    DegreeTooLow { required: u32, found: Option<u32> },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// `x^3 + y^3 + z^3`.
pub fn fermat_cubic<C: Ring>() -> HomPoly<C> {
    HomPoly::from_terms([(C::one(), [3, 0, 0]), (C::one(), [0, 3, 0]), (C::one(), [0, 0, 3])])
        .expect("homogeneous")
}

/// `(x^3 - y^3)(y^3 - z^3)(z^3 - x^3)`, the product of the nine dual Hesse lines.
pub fn dual_hesse_product<C: Ring>() -> HomPoly<C> {
    let binomial = |a: [u32; 3], b: [u32; 3]| {
        HomPoly::from_terms([(C::one(), a), (C::one().neg(), b)]).expect("homogeneous")
    };
    binomial([3, 0, 0], [0, 3, 0])
        .mul(&binomial([0, 3, 0], [0, 0, 3]))
        .mul(&binomial([0, 0, 3], [3, 0, 0]))
}

/// `xyz * (x^3 - y^3)(y^3 - z^3)(z^3 - x^3)`.
pub fn extended_fermat_arrangement<C: Ring>() -> HomPoly<C> {
    HomPoly::monomial(C::one(), [1, 1, 1]).mul(&dual_hesse_product())
}

#[derive(Debug, Clone)]
pub struct HessianBundle<C> {
    pub gamma: HomPoly<C>,
    pub hess_matrix: PolyMatrix<C>,
    pub h: HomPoly<C>,
    pub hess_h_matrix: PolyMatrix<C>,
    /// 2x2 cofactors of `Hess(Gamma)` in the order
    /// `yy.zz - yz^2, xx.zz - xz^2, xx.yy - xy^2, xy.xz - xx.yz, xy.yz - yy.xz, xz.yz - zz.xy`.
    pub adjugate: [HomPoly<C>; 6],
}

impl<C: Ring> HessianBundle<C> {
    pub fn degree(&self) -> u32 {
        self.gamma.degree().expect("nonzero curve")
    }

    /// `(H_xx, H_yy, H_zz, 2 H_yz, 2 H_xz, 2 H_xy)`, paired entrywise with
    /// [`HessianBundle::adjugate`].
    pub fn h_column(&self) -> [HomPoly<C>; 6] {
        let m = &self.hess_h_matrix;
        let two = C::from_i64(2);
        [
            m.get(0, 0).clone(),
            m.get(1, 1).clone(),
            m.get(2, 2).clone(),
            m.get(1, 2).scale(&two),
            m.get(0, 2).scale(&two),
            m.get(0, 1).scale(&two),
        ]
    }
}

#[derive(Debug, Clone)]
pub struct OmegaParts<C> {
    pub omega: HomPoly<C>,
    pub omega_gamma_grad: [HomPoly<C>; 3],
    pub omega_h_grad: [HomPoly<C>; 3],
}

#[derive(Debug, Clone)]
pub struct SecondHessianParts<C> {
    pub omega: HomPoly<C>,
    pub omega_gamma_grad: [HomPoly<C>; 3],
    pub omega_h_grad: [HomPoly<C>; 3],
    pub psi: HomPoly<C>,
    pub h2: HomPoly<C>,
}

/// Integer weights of the three Jacobian terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Coefficients {
    pub omega_h: i64,
    pub omega_gamma: i64,
    /// Subtracted.
    pub psi: i64,
}

impl Coefficients {
    /// The corrected weights for a curve of degree `d`.
    pub fn corrected(d: u32) -> Self {
        Self::with_psi_factor(d, 20)
    }

    /// Same, with `factor * (d - 2)^2` as the weight of the `Psi` term.
    pub fn with_psi_factor(d: u32, factor: i64) -> Self {
        let d = i64::from(d);
        Self {
            omega_h: 12 * d * d - 54 * d + 57,
            omega_gamma: (d - 2) * (12 * d - 27),
            psi: factor * (d - 2) * (d - 2),
        }
    }
}

fn sum_products<C: Ring>(a: &[HomPoly<C>], b: &[HomPoly<C>]) -> Result<HomPoly<C>, PolyError> {
    a.iter().zip(b).try_fold(HomPoly::zero(), |acc, (p, q)| acc.try_add(&p.mul(q)))
}

/// `Hess(Gamma)`, `H`, `Hess(H)` and the adjugate column.
pub fn hessian<C: Ring>(gamma: &HomPoly<C>) -> Result<HessianBundle<C>, CayleyError> {
    match gamma.degree() {
        Some(d) if d >= 2 => {}
        found => return Err(CayleyError::DegreeTooLow { required: 2, found }),
    }
    let hess_matrix = hessian_matrix(gamma);
    let h = hess_matrix.det()?;
    let hess_h_matrix = hessian_matrix(&h);
    let g = |i: usize, j: usize| hess_matrix.get(i, j);
    let cofactor = |a: (usize, usize), b: (usize, usize), c: (usize, usize), d: (usize, usize)| {
        g(a.0, a.1).mul(g(b.0, b.1)).try_sub(&g(c.0, c.1).mul(g(d.0, d.1)))
    };
    let adjugate = [
        cofactor((1, 1), (2, 2), (1, 2), (1, 2))?,
        cofactor((0, 0), (2, 2), (0, 2), (0, 2))?,
        cofactor((0, 0), (1, 1), (0, 1), (0, 1))?,
        cofactor((0, 1), (0, 2), (0, 0), (1, 2))?,
        cofactor((0, 1), (1, 2), (1, 1), (0, 2))?,
        cofactor((0, 2), (1, 2), (2, 2), (0, 1))?,
    ];
    Ok(HessianBundle { gamma: gamma.clone(), hess_matrix, h, hess_h_matrix, adjugate })
}

/// `Omega` and the two partial-derivative triples `(Omega_Gamma)_u`,
/// `(Omega_H)_u`.
pub fn omega_products<C: Ring>(b: &HessianBundle<C>) -> Result<OmegaParts<C>, CayleyError> {
    let column = b.h_column();
    let omega = sum_products(&b.adjugate, &column)?;
    let mut omega_gamma_grad: [HomPoly<C>; 3] = std::array::from_fn(|_| HomPoly::zero());
    let mut omega_h_grad: [HomPoly<C>; 3] = std::array::from_fn(|_| HomPoly::zero());
    for v in Var::ALL {
        let d_adj: Vec<_> = b.adjugate.iter().map(|p| p.derivative(v)).collect();
        let d_col: Vec<_> = column.iter().map(|p| p.derivative(v)).collect();
        omega_gamma_grad[v.index()] = sum_products(&d_adj, &column)?;
        omega_h_grad[v.index()] = sum_products(&b.adjugate, &d_col)?;
    }
    Ok(OmegaParts { omega, omega_gamma_grad, omega_h_grad })
}

/// `Psi = -det` of `Hess(Gamma)` bordered by `grad H` and a zero corner.
pub fn psi<C: Ring>(b: &HessianBundle<C>) -> Result<HomPoly<C>, CayleyError> {
    let grad = b.h.gradient();
    let mut rows = vec![std::iter::once(HomPoly::zero()).chain(grad.iter().cloned()).collect::<Vec<_>>()];
    for (i, gi) in grad.iter().enumerate() {
        let mut row = vec![gi.clone()];
        row.extend((0..3).map(|j| b.hess_matrix.get(i, j).clone()));
        rows.push(row);
    }
    Ok(PolyMatrix::new(rows)?.det()?.neg())
}

pub fn second_hessian<C: Ring>(gamma: &HomPoly<C>) -> Result<SecondHessianParts<C>, CayleyError> {
    let d = gamma.degree().unwrap_or(0);
    second_hessian_with(gamma, Coefficients::corrected(d))
}

pub fn second_hessian_with<C: Ring>(gamma: &HomPoly<C>, coeffs: Coefficients) -> Result<SecondHessianParts<C>, CayleyError> {
    match gamma.degree() {
        Some(d) if d >= 3 => {}
        found => return Err(CayleyError::DegreeTooLow { required: 3, found }),
    }
    let bundle = hessian(gamma)?;
    let parts = omega_products(&bundle)?;
    let psi = psi(&bundle)?;
    let psi_grad = psi.gradient();
    let h = &bundle.h;

    let ((j_h, j_gamma), j_psi) = rayon::join(
        || {
            rayon::join(
                || jacobian_with_row(gamma, h, &parts.omega_h_grad),
                || jacobian_with_row(gamma, h, &parts.omega_gamma_grad),
            )
        },
        || jacobian_with_row(gamma, h, &psi_grad),
    );
    let term_h = h.mul(&j_h?).scale(&C::from_i64(coeffs.omega_h));
    let term_gamma = h.mul(&j_gamma?).scale(&C::from_i64(coeffs.omega_gamma));
    let term_psi = j_psi?.scale(&C::from_i64(coeffs.psi));
    let h2 = term_h.try_add(&term_gamma)?.try_sub(&term_psi)?;

    Ok(SecondHessianParts {
        omega: parts.omega,
        omega_gamma_grad: parts.omega_gamma_grad,
        omega_h_grad: parts.omega_h_grad,
        psi,
        h2,
    })
}

/// `H(f) * H2(f)`.
pub fn extended_fermat_product<C: Ring>(f: &HomPoly<C>) -> Result<HomPoly<C>, CayleyError> {
    let bundle = hessian(f)?;
    let parts = second_hessian(f)?;
    Ok(bundle.h.mul(&parts.h2))
}
