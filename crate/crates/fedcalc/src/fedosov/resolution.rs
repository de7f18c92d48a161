//! The Fedosov iteration for `A` and the differential `D = ∇ − δ + A·`.

use crate::algebra::{PolyVector, Rational, RawKey, XPoly};

use super::connection::Connection;
use super::homotopy::Fiberwise;

/// Solution of the Fedosov equation for a connection at a fixed truncation order.
#[derive(Debug, Clone)]
pub struct FedosovData {
    conn: Connection,
    order: u32,
    gamma: PolyVector,
    a: PolyVector,
    /// `Γ + A` and `Γ − dx^i ∂/∂y^i + A`, cached.
    t: PolyVector,
    b: PolyVector,
    iterations: usize,
}

/// `dx^i ∂/∂y^i`, the vector field whose action is `δ`.
pub fn koszul_field(dim: usize, order: u32) -> PolyVector {
    PolyVector::normalize(
        dim,
        order,
        (0..dim).map(|i| (RawKey { dx: vec![i], dy: vec![i], ..Default::default() }, XPoly::one())),
    )
    .unwrap()
}

impl FedosovData {
    /// Iterates `A = δ⁻¹(𝓡 + ∇A + ½[A,A])` from `A = 0` until no coefficient changes.
    pub fn compute(conn: &Connection, order: u32) -> FedosovData {
        assert!(order >= 2, "truncation order must be at least 2");
        let dim = conn.dim();
        let gamma = conn.gamma_form(order);
        let curv = conn.curvature(order);
        let half = Rational::new(1, 2);
        let mut a = PolyVector::new(dim, order);
        let mut iterations = 0;
        loop {
            let mut rhs = curv.clone();
            rhs.add_assign(&a.d());
            rhs.add_assign(&gamma.schouten(&a));
            rhs.add_scaled(&a.schouten(&a), &half);
            let next = rhs.delta_inv();
            iterations += 1;
            if next == a {
                break;
            }
            a = next;
            assert!(iterations <= order as usize + 2, "Fedosov iteration failed to stabilize");
        }
        let koszul = koszul_field(dim, order);
        let t = gamma.add(&a);
        let b = t.sub(&koszul);
        FedosovData { conn: conn.clone(), order, gamma, a, t, b, iterations }
    }

    pub fn connection(&self) -> &Connection {
        &self.conn
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.conn.dim()
    }

    /// The correction `A`.
    pub fn a(&self) -> &PolyVector {
        &self.a
    }

    /// Number of iteration steps, the last one confirming the fixed point.
    pub fn iterations(&self) -> usize {
        self.iterations
    }

    pub fn gamma(&self) -> &PolyVector {
        &self.gamma
    }

    /// `B = Γ − dx^i ∂/∂y^i + A`, so that `D = d + B·`.
    pub fn mc_element(&self) -> &PolyVector {
        &self.b
    }

    /// `T = Γ + A`, so that `D = d − δ + T·`.
    pub fn t_field(&self) -> &PolyVector {
        &self.t
    }

    /// `dB + ½[B,B]` in the Schouten DGLA; vanishes below the truncation edge.
    pub fn mc_residual(&self) -> PolyVector {
        let mut r = self.b.d();
        r.add_scaled(&self.b.schouten(&self.b), &Rational::new(1, 2));
        r
    }

    /// `∇a + A·a`.
    pub fn nabla_plus_a<T: Fiberwise>(&self, x: &T) -> T {
        x.d_x().plus(&x.act(&self.t))
    }

    /// The Fedosov differential `D = ∇ − δ + A·`.
    pub fn d<T: Fiberwise>(&self, x: &T) -> T {
        x.d_x().plus(&x.act(&self.b))
    }

    /// The flat differential `D₀ = d − δ`.
    pub fn d0<T: Fiberwise>(&self, x: &T) -> T {
        x.d_x().minus(&x.delta())
    }
}
