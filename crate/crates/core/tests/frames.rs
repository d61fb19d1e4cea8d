//! Position operators `X^i = -i ξ^i_j ∂_j` built from the dual frame.

mod common;

use fuzzy_fluid::su2::{self, CutoffParam};
use fuzzy_fluid::vec3::{self, Vec3};
use nalgebra::Matrix3;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;

/// Component `j` of the vector field `V_i = ξ^i_j ∂_j`.
fn frame(k: Vec3, a: CutoffParam, i: usize) -> Vec3 {
    let xi = su2::maurer_cartan_xi(k, a).unwrap();
    [xi[(i, 0)], xi[(i, 1)], xi[(i, 2)]]
}

/// Lie bracket `[V_i, V_j]` at `k`, by central differences of the frame.
fn bracket(k: Vec3, a: CutoffParam, i: usize, j: usize) -> Vec3 {
    let eps = 1e-5;
    let jac = |n: usize| {
        Matrix3::from_fn(|m, l| {
            let mut p = k;
            let mut q = k;
            p[l] += eps;
            q[l] -= eps;
            (frame(p, a, n)[m] - frame(q, a, n)[m]) / (2.0 * eps)
        })
    };
    let (vi, vj) = (nalgebra::Vector3::from(frame(k, a, i)), nalgebra::Vector3::from(frame(k, a, j)));
    let b = jac(j) * vi - jac(i) * vj;
    [b[0], b[1], b[2]]
}

#[test]
fn frames_close_under_su2_brackets() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for a in [0.1, 0.5] {
        let c = cut(a);
        for _ in 0..20 {
            let k = random_in_ball(&mut rng, 1.0 / a);
            for (i, j, l) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
                let lhs = bracket(k, c, i, j);
                // [X^i, X^j] = -[V_i, V_j] = i·4a·X^l  ⇔  [V_i, V_j] = -4a V_l
                let rhs = vec3::scale(-4.0 * a, frame(k, c, l));
                let err = vec3::norm(vec3::sub(lhs, rhs));
                assert!(err <= 1e-7 * (1.0 + vec3::norm(rhs)), "a={a} k={k:?}: {lhs:?} vs {rhs:?}");
            }
        }
    }
}

#[test]
fn frames_commute_at_zero_cutoff() {
    let c = cut(0.0);
    let k = [0.3, -1.2, 0.8];
    for (i, j) in [(0, 1), (1, 2), (0, 2)] {
        assert!(vec3::norm(bracket(k, c, i, j)) <= 1e-9);
    }
}

#[test]
fn momentum_position_commutator_is_frame() {
    // ([P_i, X^j] f)(k) = i ξ^j_i(k) f(k) for the multiplication operator P_i = k_i.
    let c = cut(0.4);
    let f = |k: Vec3| (k[0] - 2.0 * k[1] + 0.5 * k[2]).sin() + vec3::norm2(k);
    // X^j acting on g, returned as the coefficient of -i.
    let x_on = |g: &dyn Fn(Vec3) -> f64, k: Vec3, j: usize| {
        let d: Vec3 = std::array::from_fn(|l| {
            let (mut p, mut q) = (k, k);
            p[l] += 1e-5;
            q[l] -= 1e-5;
            (g(p) - g(q)) / 2e-5
        });
        vec3::dot(frame(k, c, j), d)
    };
    let k = [0.4, 0.1, -0.7];
    for i in 0..3 {
        for j in 0..3 {
            let pf = |q: Vec3| q[i] * f(q);
            // [P_i, X^j] f = P_i X^j f - X^j (P_i f), each X carrying -i.
            let comm = -(k[i] * x_on(&f, k, j) - x_on(&pf, k, j));
            let expected = frame(k, c, j)[i] * f(k);
            assert!((comm - expected).abs() <= 1e-7, "i={i} j={j}: {comm} vs {expected}");
        }
    }
}
