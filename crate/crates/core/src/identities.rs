//! Engine self-test: algebraic identities that must hold exactly for every
//! input, evaluated on random polynomial elements of a few algebroids.

use crate::algebroid::{JacobiAlgebroid, LieAlgebroid};
use crate::contact::{build_e1, build_tangent};
use crate::nijenhuis::fundamental_identity_defect;
use crate::report::{Report, ZeroCheck};
use crate::sampling::{random_kvector, CheckConfig};
use crate::symalg::{KVector, Naming, Poly, Variance};

const MV: Variance = Variance::Multivector;
const FORM: Variance = Variance::Form;

/// Random bivectors tested against the fundamental identity per host.
pub const FUNDAMENTAL_SAMPLES: usize = 20;

/// `so(3)` acting on `R³` by rotations: `a(e_i) = -ε_ijk x_j ∂_k`,
/// `[e_1,e_2] = e_3` and cyclic.
pub fn rotation_algebroid() -> LieAlgebroid {
    let m = 3;
    let v = |i| Poly::var(m, i);
    let z = || Poly::zero(m);
    let anchor = vec![
        vec![z(), v(2), -v(1)],
        vec![-v(2), z(), v(0)],
        vec![v(1), -v(0), z()],
    ];
    let mut structure = vec![vec![vec![Poly::zero(m); 3]; 3]; 3];
    for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        structure[i][j][k] = Poly::one(m);
        structure[j][i][k] = -Poly::one(m);
    }
    let naming = Naming::generic(vec!["x".into(), "y".into(), "z".into()], 3);
    LieAlgebroid::new(naming, anchor, structure).expect("consistent shapes")
}

/// The hosts the suite runs on.
pub fn hosts() -> Vec<(&'static str, JacobiAlgebroid)> {
    let x = Poly::var(3, 0);
    let y = Poly::var(3, 1);
    // φ0 = d(xy) + dz
    let tangent = build_tangent(&["x", "y", "z"], &[y, x, Poly::one(3)]).expect("closed");
    vec![
        ("tangent R3, phi0 = d(xy) + dz", tangent),
        ("E1 over R2", build_e1(&["x", "y"])),
        ("so(3) action on R3", JacobiAlgebroid::from_lie(rotation_algebroid())),
    ]
}

fn sign(k: usize) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Runs every identity on every host.
pub fn identity_suite(cfg: &CheckConfig) -> Vec<Report> {
    hosts().iter().map(|(name, ja)| host_suite(name, ja, cfg)).collect()
}

fn host_suite(name: &str, ja: &JacobiAlgebroid, cfg: &CheckConfig) -> Report {
    let alg = ja.base();
    let naming = ja.naming();
    let (r, nv) = (ja.rank(), ja.nvars());
    let mut rng = cfg.rng(101);
    let deg = cfg.degree;
    let cases = cfg.random_cases.max(1) * 2;
    let mut rep = Report::new(format!("identities: {name}"));

    let mut d2 = ZeroCheck::new("d^2 = 0", naming);
    let mut dj2 = ZeroCheck::new("(d^phi0)^2 = 0", naming);
    let mut anomaly = ZeroCheck::new("d^phi0(a^b) - d^phi0 a^b - (-1)^|a| a^d^phi0 b = -phi0^a^b", naming);
    let mut lie = ZeroCheck::new("Lie^phi0_X w = L_X w + phi0(X) w", naming);
    for n in 0..cases {
        for k in 0..r.saturating_sub(1) {
            let w = random_kvector(&mut rng, r, nv, k, FORM, deg);
            let label = || format!("random {k}-form #{n}");
            d2.kvector(label, &alg.differential(&alg.differential(&w)));
            dj2.kvector(label, &ja.differential(&ja.differential(&w)));
            let x = random_kvector(&mut rng, r, nv, 1, MV, deg);
            let fx = x.pair(ja.phi0());
            let res = ja.lie_derivative(&x, &w).sub(&alg.lie_derivative(&x, &w)).sub(&w.scale(&fx));
            lie.kvector(label, &res);
        }
        for p in 0..r {
            for q in 0..r - p {
                let a = random_kvector(&mut rng, r, nv, p, FORM, deg);
                let b = random_kvector(&mut rng, r, nv, q, FORM, deg);
                let lhs = ja
                    .differential(&a.wedge(&b))
                    .sub(&ja.differential(&a).wedge(&b))
                    .sub(&a.wedge(&ja.differential(&b)).scale_int(sign(p)));
                let res = lhs.add(&ja.phi0().wedge(&a).wedge(&b));
                anomaly.kvector(|| format!("random ({p},{q})-forms #{n}"), &res);
            }
        }
    }
    rep.push(d2.finish());
    rep.push(dj2.finish());
    rep.push(lie.finish());
    rep.push(anomaly.finish());

    let mut jac = ZeroCheck::new("graded Jacobi for the Schouten bracket", naming);
    let mut anti = ZeroCheck::new("graded antisymmetry of the Schouten bracket", naming);
    for n in 0..cases {
        for p in 0..=2usize {
            for q in 0..=2usize {
                if p + q == 0 {
                    continue;
                }
                let s = r.min(3);
                for t in 1..=s.min(2) {
                    let pp = random_kvector(&mut rng, r, nv, p, MV, deg);
                    let qq = random_kvector(&mut rng, r, nv, q, MV, deg);
                    let rr = random_kvector(&mut rng, r, nv, t, MV, deg);
                    let br = |a: &KVector, b: &KVector| alg.schouten(a, b);
                    let lhs = br(&pp, &br(&qq, &rr));
                    let rhs = br(&br(&pp, &qq), &rr)
                        .add(&br(&qq, &br(&pp, &rr)).scale_int(sign((p + 1) * (q + 1))));
                    jac.kvector(|| format!("random degrees ({p},{q},{t}) #{n}"), &lhs.sub(&rhs));
                }
                let pp = random_kvector(&mut rng, r, nv, p, MV, deg);
                let qq = random_kvector(&mut rng, r, nv, q, MV, deg);
                let res = alg.schouten(&pp, &qq).add(&alg.schouten(&qq, &pp).scale_int(sign((p + 1) * (q + 1))));
                anti.kvector(|| format!("random degrees ({p},{q}) #{n}"), &res);
            }
        }
    }
    rep.push(jac.finish());
    rep.push(anti.finish());

    let mut fund = ZeroCheck::new("pi#[[xi,eta]]_pi - [pi#xi, pi#eta] = 1/2 [[pi,pi]](xi,eta)", naming);
    for n in 0..FUNDAMENTAL_SAMPLES {
        let pi = random_kvector(&mut rng, r, nv, 2, MV, deg.min(1));
        let xi = random_kvector(&mut rng, r, nv, 1, FORM, 1);
        let eta = random_kvector(&mut rng, r, nv, 1, FORM, 1);
        fund.kvector(|| format!("random bivector #{n}"), &fundamental_identity_defect(ja, &pi, &xi, &eta));
    }
    rep.push(fund.finish());
    rep
}

/// The number of random bivectors checked against the fundamental identity
/// across all hosts.
pub fn fundamental_sample_count() -> usize {
    hosts().len() * FUNDAMENTAL_SAMPLES
}
