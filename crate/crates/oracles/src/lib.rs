//! Brute-force reference computations for the test suites.
//!
//! Everything here works on plain arrays and deliberately shares no code
//! with `tiltpick`: no simplex, no rank test, no geometry types. Results are
//! slow but simple enough to check by hand.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type W3 = [f64; 3];
pub type P2 = [f64; 2];

fn dot3(a: W3, b: W3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn det3(c0: W3, c1: W3, c2: W3) -> f64 {
    c0[0] * (c1[1] * c2[2] - c1[2] * c2[1]) - c1[0] * (c0[1] * c2[2] - c0[2] * c2[1])
        + c2[0] * (c0[1] * c1[2] - c0[2] * c1[1])
}

/// Uniform random unit vectors on the sphere, by rejection from the cube.
pub fn random_directions(n: usize, seed: u64) -> Vec<W3> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let v = [
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        ];
        let r2 = dot3(v, v);
        if r2 > 1e-6 && r2 <= 1.0 {
            let r = r2.sqrt();
            out.push([v[0] / r, v[1] / r, v[2] / r]);
        }
    }
    out
}

/// Force closure by direction sampling: the generators positively span the
/// wrench space iff every direction has a generator on its positive side.
pub fn sampled_force_closure(generators: &[W3], directions: &[W3]) -> bool {
    directions
        .iter()
        .all(|&d| generators.iter().any(|&g| dot3(d, g) > 0.0))
}

/// Re-expresses generators in coordinates where their second-moment matrix
/// is the identity: `g ↦ L⁻¹ g` with `L Lᵀ = Σ g gᵀ`. Positive spanning is
/// unchanged by any invertible linear map, and sampled directions cover the
/// whitened cone far more evenly. `None` when the generators do not span R³.
pub fn whiten(generators: &[W3]) -> Option<Vec<W3>> {
    let mut m = [[0.0; 3]; 3];
    for g in generators {
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] += g[i] * g[j];
            }
        }
    }
    let floor = 1e-12 * (m[0][0] + m[1][1] + m[2][2]);
    let mut l = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..=i {
            let s: f64 = (0..j).map(|k| l[i][k] * l[j][k]).sum();
            if i == j {
                let d = m[i][i] - s;
                if d <= floor {
                    return None;
                }
                l[i][i] = d.sqrt();
            } else {
                l[i][j] = (m[i][j] - s) / l[j][j];
            }
        }
    }
    Some(
        generators
            .iter()
            .map(|g| {
                let y0 = g[0] / l[0][0];
                let y1 = (g[1] - l[1][0] * y0) / l[1][1];
                let y2 = (g[2] - l[2][0] * y0 - l[2][1] * y1) / l[2][2];
                [y0, y1, y2]
            })
            .collect(),
    )
}

/// Point-force wrench `(fx, fz, px·fz − pz·fx)`.
pub fn point_wrench(p: P2, f: P2) -> W3 {
    [f[0], f[1], p[0] * f[1] - p[1] * f[0]]
}

/// Friction-cone edge wrenches of a contact, built from the half-angle
/// rather than from `n ± μ t`.
pub fn friction_edges(p: P2, n: P2, mu: f64) -> [W3; 2] {
    let a = mu.atan();
    let base = n[1].atan2(n[0]);
    let up = [(base + a).cos(), (base + a).sin()];
    let lo = [(base - a).cos(), (base - a).sin()];
    [point_wrench(p, up), point_wrench(p, lo)]
}

/// Conic membership by enumerating every subset of at most three generators
/// (Carathéodory) and solving the small linear systems directly.
pub fn enumerated_positive_span(generators: &[W3], target: W3) -> bool {
    let tol = 1e-9 * (1.0 + dot3(target, target).sqrt());
    let n = generators.len();
    let t_norm = dot3(target, target).sqrt();
    if t_norm == 0.0 {
        return true;
    }

    // Single rays.
    for &g in generators {
        let k = dot3(g, target) / dot3(g, g);
        if k >= 0.0 && residual(&[g], &[k], target) <= tol {
            return true;
        }
    }
    // Pairs: least squares on the 2-D span.
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (generators[i], generators[j]);
            let (aa, ab, bb) = (dot3(a, a), dot3(a, b), dot3(b, b));
            let det = aa * bb - ab * ab;
            if det.abs() < 1e-14 * aa * bb {
                continue;
            }
            let (at, bt) = (dot3(a, target), dot3(b, target));
            let ka = (bb * at - ab * bt) / det;
            let kb = (aa * bt - ab * at) / det;
            if ka >= -1e-12 && kb >= -1e-12 && residual(&[a, b], &[ka.max(0.0), kb.max(0.0)], target) <= tol {
                return true;
            }
        }
    }
    // Triples: Cramer's rule.
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (a, b, c) = (generators[i], generators[j], generators[k]);
                let d = det3(a, b, c);
                if d.abs() < 1e-12 {
                    continue;
                }
                let ka = det3(target, b, c) / d;
                let kb = det3(a, target, c) / d;
                let kc = det3(a, b, target) / d;
                if ka >= -1e-12 && kb >= -1e-12 && kc >= -1e-12 {
                    return true;
                }
            }
        }
    }
    false
}

/// Force closure decided exactly: the cone is all of R³ iff it contains the
/// six signed coordinate axes.
pub fn exact_force_closure(generators: &[W3]) -> bool {
    (0..3).all(|i| {
        [-1.0, 1.0].iter().all(|&s| {
            let mut e = [0.0; 3];
            e[i] = s;
            enumerated_positive_span(generators, e)
        })
    })
}

fn residual(gens: &[W3], k: &[f64], target: W3) -> f64 {
    let mut s = [0.0; 3];
    for (g, &kk) in gens.iter().zip(k) {
        for r in 0..3 {
            s[r] += kk * g[r];
        }
    }
    (0..3).map(|r| (s[r] - target[r]).abs()).fold(0.0, f64::max)
}

/// Centroid of a simple polygon by the shoelace integral.
pub fn polygon_centroid(vertices: &[P2]) -> P2 {
    let n = vertices.len();
    let (mut area2, mut cx, mut cz) = (0.0, 0.0, 0.0);
    for i in 0..n {
        let [x0, z0] = vertices[i];
        let [x1, z1] = vertices[(i + 1) % n];
        let cr = x0 * z1 - x1 * z0;
        area2 += cr;
        cx += (x0 + x1) * cr;
        cz += (z0 + z1) * cr;
    }
    [cx / (3.0 * area2), cz / (3.0 * area2)]
}

/// Whether `{q : a_i · q ≤ b_i}` has non-empty interior, by enumerating the
/// vertices of its intersection with a large box and testing whether their
/// mean is strictly inside.
pub fn halfplanes_have_interior(constraints: &[(P2, f64)], box_half_width: f64) -> bool {
    let m = box_half_width;
    let mut all: Vec<(P2, f64)> = constraints.to_vec();
    all.push(([1.0, 0.0], m));
    all.push(([-1.0, 0.0], m));
    all.push(([0.0, 1.0], m));
    all.push(([0.0, -1.0], m));

    let tol = 1e-9 * (1.0 + m);
    let mut verts: Vec<P2> = Vec::new();
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            let ((a, b), (c, d)) = (all[i], all[j]);
            let det = a[0] * c[1] - a[1] * c[0];
            if det.abs() < 1e-14 {
                continue;
            }
            let q = [(b * c[1] - a[1] * d) / det, (a[0] * d - b * c[0]) / det];
            if all.iter().all(|(n, rhs)| n[0] * q[0] + n[1] * q[1] <= rhs + tol) {
                verts.push(q);
            }
        }
    }
    if verts.len() < 3 {
        return false;
    }
    let k = verts.len() as f64;
    let mean = [
        verts.iter().map(|v| v[0]).sum::<f64>() / k,
        verts.iter().map(|v| v[1]).sum::<f64>() / k,
    ];
    let margin = 1e-7 * (1.0 + m);
    all.iter()
        .all(|(n, rhs)| n[0] * mean[0] + n[1] * mean[1] < rhs - margin)
}

/// Clockwise rotation centers of contacts `(position, push normal)`:
/// `σ(q) = perp(p − q) · n ≤ 0`, written as `a · q ≤ b`.
pub fn cw_center_constraints(contacts: &[(P2, P2)]) -> Vec<(P2, f64)> {
    contacts
        .iter()
        .map(|&(p, n)| {
            // perp(p − q) · n = −(p_z − q_z) n_x + (p_x − q_x) n_z
            //                 = (p_x n_z − p_z n_x) + (−n_z) q_x + n_x q_z
            let k = p[0] * n[1] - p[1] * n[0];
            ([-n[1], n[0]], -k)
        })
        .collect()
}
