//! Sporadic subgroups of Ω7(3) and the subgroups S ≤ SL4(3) used inside
//! Ω9(3).
//!
//! Explicit constructions: A9, A8, S8 (sign-twisted) and PΓL2(8) on the
//! 7-dimensional heart of the 9-point permutation module; Sp6(2) as the
//! rotation subgroup of W(E7) mod 3; monomial groups on orthogonal frames;
//! 3^3:SL3(3) inside P3. Groups whose existence is only asserted (2.L3(4),
//! the S5 classes inside the line stabilizer, SL2(5) in SL2(9),
//! 2^{1+4}.A5 in Sp4(3)) come from seeded random discovery.

use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::{FxHashSet, FxHasher};

use super::classical::{
    levi, mult_matrix, omega_on, parabolic_rt, r_derived_gens, sl_generators, sp_generators, AffineOmega4Minus,
};
use super::orders::{factorial, ord, Family};
use super::{AtlasError, Group, Provenance};
use crate::engine::{schreier_sims, stabilizer, Bsgs, Element, LineAction, ProductReplacement, SsOptions};
use crate::gf::{make_field, Field};
use crate::orthospace::{search_span, similarity_to_standard, vec_axpy, vec_scale, Mat, OrthSpace, Subspace};

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

fn require_gf3(space: &OrthSpace) -> Result<(), AtlasError> {
    if space.field().order() == 3 {
        Ok(())
    } else {
        Err(AtlasError::BadCharacteristic)
    }
}

// ---------------------------------------------------------------------------
// Permutation module of S9 mod 3.

/// Gram matrix of the dot product on the heart, basis `p_i - p_9` (i ≤ 7).
pub fn perm_heart_gram(field: &Arc<Field>) -> Mat {
    let mut g = Mat::zeros(field, 7, 7);
    for i in 0..7 {
        for j in 0..7 {
            g.set(i, j, if i == j { 2 } else { 1 });
        }
    }
    g
}

/// Action of the permutation `i ↦ images[i]` of `0..9` on the heart,
/// negated when `negate` is set.
pub fn perm_heart_matrix(field: &Arc<Field>, images: &[usize], negate: bool) -> Mat {
    let f = &**field;
    let b = |k: usize| -> Vec<u32> {
        match k {
            0..=6 => {
                let mut v = vec![0; 7];
                v[k] = 1;
                v
            }
            7 => vec![2; 7],
            _ => vec![0; 7],
        }
    };
    let rows: Vec<Vec<u32>> = (0..7)
        .map(|i| {
            let r = vec_axpy(f, &b(images[i]), f.neg(1), &b(images[8]));
            if negate {
                vec_scale(f, f.neg(1), &r)
            } else {
                r
            }
        })
        .collect();
    Mat::from_rows(field, &rows)
}

fn cycle(n: usize, pts: &[usize]) -> Vec<usize> {
    let mut im: Vec<usize> = (0..n).collect();
    for (k, &p) in pts.iter().enumerate() {
        im[p] = pts[(k + 1) % pts.len()];
    }
    im
}

fn is_odd(images: &[usize]) -> bool {
    let mut seen = vec![false; images.len()];
    let mut parity = 0;
    for s in 0..images.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = images[x];
            len += 1;
        }
        parity += len - 1;
    }
    parity % 2 == 1
}

/// Permutations of 9 points as matrices of Ω7(3) in the standard basis.
/// Odd permutations are twisted by −1.
pub fn perm_group(
    space: &Arc<OrthSpace>,
    name: &str,
    perms: &[Vec<usize>],
    order: BigUint,
) -> Result<Group, AtlasError> {
    require_gf3(space)?;
    let field = space.field();
    let sim = similarity_to_standard(field, &perm_heart_gram(field))?;
    let gens = perms
        .iter()
        .map(|p| sim.transport(&perm_heart_matrix(field, p, is_odd(p))))
        .collect();
    Group::new(name, space, gens, Some(order), Provenance::Constructed)
}

pub fn a9_group(space: &Arc<OrthSpace>) -> Result<Group, AtlasError> {
    let gens = vec![cycle(9, &[0, 1, 2]), cycle(9, &[0, 1, 2, 3, 4, 5, 6, 7, 8])];
    perm_group(space, "A9", &gens, factorial(9) / 2u32)
}

pub fn a8_group(space: &Arc<OrthSpace>) -> Result<Group, AtlasError> {
    let gens = vec![cycle(9, &[0, 1, 2]), cycle(9, &[1, 2, 3, 4, 5, 6, 7])];
    perm_group(space, "A8", &gens, factorial(8) / 2u32)
}

/// S8 with odd permutations acting as their negatives.
pub fn s8_group(space: &Arc<OrthSpace>) -> Result<Group, AtlasError> {
    let gens = vec![cycle(9, &[0, 1]), cycle(9, &[0, 1, 2, 3, 4, 5, 6, 7])];
    perm_group(space, "S8", &gens, factorial(8))
}

fn gf8_mul(a: usize, b: usize) -> usize {
    let mut r = 0;
    for i in 0..3 {
        if b >> i & 1 == 1 {
            r ^= a << i;
        }
    }
    for i in (3..5).rev() {
        if r >> i & 1 == 1 {
            r ^= 0b1011 << (i - 3);
        }
    }
    r
}

/// PΓL2(8) (= ²G2(3)) or PSL2(8) (= ²G2(3)') on the projective line over
/// GF(8), points `0..8` field elements and `8 = ∞`.
pub fn ree_group(space: &Arc<OrthSpace>, derived_only: bool) -> Result<Group, AtlasError> {
    const INF: usize = 8;
    let inv = |x: usize| (1..8).find(|&y| gf8_mul(x, y) == 1).expect("nonzero");
    let map = |f: &dyn Fn(usize) -> usize| (0..9).map(f).collect::<Vec<usize>>();
    let mut gens = vec![
        map(&|x| if x == INF { INF } else { x ^ 1 }),
        map(&|x| if x == INF { INF } else { gf8_mul(2, x) }),
        map(&|x| match x {
            0 => INF,
            INF => 0,
            _ => inv(x),
        }),
    ];
    let (name, order) = if derived_only {
        ("2G2(3)'", big(504))
    } else {
        gens.push(map(&|x| if x == INF { INF } else { gf8_mul(x, x) }));
        ("2G2(3)", big(1512))
    };
    perm_group(space, name, &gens, order)
}

// ---------------------------------------------------------------------------
// Sp6(2) as W(E7)^+ mod 3.

const E7_EDGES: [(usize, usize); 6] = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (1, 3)];

pub fn e7_cartan(field: &Arc<Field>) -> Mat {
    let mut c = Mat::zeros(field, 7, 7);
    for i in 0..7 {
        c.set(i, i, 2);
    }
    for &(a, b) in &E7_EDGES {
        c.set(a, b, field.from_int(-1));
        c.set(b, a, field.from_int(-1));
    }
    c
}

/// Rotation subgroup of W(E7), generated by `s_1 s_k`.
pub fn sp62_group(space: &Arc<OrthSpace>) -> Result<Group, AtlasError> {
    require_gf3(space)?;
    let field = space.field();
    let f = &**field;
    let c = e7_cartan(field);
    let refl = |i: usize| {
        let mut m = Mat::identity(field, 7);
        for j in 0..7 {
            m.set(j, i, f.sub(m.get(j, i), c.get(j, i)));
        }
        m
    };
    let sim = similarity_to_standard(field, &c)?;
    let gens = (1..7).map(|k| sim.transport(&refl(0).mul(&refl(k)))).collect();
    Group::new(
        "Sp6(2)",
        space,
        gens,
        Some(ord(Family::Sp, 6, 2)),
        Provenance::Constructed,
    )
}

// ---------------------------------------------------------------------------
// Monomial groups on orthogonal frames.

/// Pairwise orthogonal vectors of norm `norm` spanning `span(basis)`.
pub fn orthogonal_frame(space: &OrthSpace, basis: &[Vec<u32>], norm: u32) -> Option<Vec<Vec<u32>>> {
    let f = &**space.field();
    let mut current: Vec<Vec<u32>> = basis.to_vec();
    let mut frame = Vec::new();
    while !current.is_empty() {
        let v = search_span(f, &current, |x| space.quad(x) == norm)?;
        let qinv = f.inv(norm);
        let proj: Vec<Vec<u32>> = current
            .iter()
            .map(|b| vec_axpy(f, b, f.neg(f.mul(space.beta_raw(b, &v), qinv)), &v))
            .collect();
        current = Subspace::span(f, space.dim(), &proj).basis().to_vec();
        frame.push(v);
    }
    Some(frame)
}

/// Transport of `diag(I_{n-k}, M)` written in the basis `rows`
/// (the last k rows form the frame).
fn in_basis(rows: &Mat, block: &Mat) -> Mat {
    let n = rows.rows();
    let k = block.rows();
    let mut m = Mat::identity(rows.field(), n);
    for i in 0..k {
        for j in 0..k {
            m.set(n - k + i, n - k + j, block.get(i, j));
        }
    }
    rows.inverse().expect("basis").mul(&m).mul(rows)
}

fn signed_perm(field: &Arc<Field>, images: &[usize], signs: &[bool]) -> Mat {
    let n = images.len();
    let mut m = Mat::zeros(field, n, n);
    for i in 0..n {
        m.set(i, images[i], if signs[i] { field.neg(1) } else { 1 });
    }
    m
}

/// `2^{k-1}:A_k` on the frame: even permutations and even sign changes.
fn monomial_gens(field: &Arc<Field>, k: usize) -> Vec<Mat> {
    let all: Vec<usize> = (0..k).collect();
    let plus = vec![false; k];
    let mut two = vec![false; k];
    two[0] = true;
    two[1] = true;
    let long = if k % 2 == 1 {
        cycle(k, &all)
    } else {
        cycle(k, &all[1..])
    };
    vec![
        signed_perm(field, &cycle(k, &[0, 1, 2]), &plus),
        signed_perm(field, &long, &plus),
        signed_perm(field, &(0..k).collect::<Vec<_>>(), &two),
    ]
}

/// 2^6:A7, monomial on a frame of 7 vectors of norm 2.
pub fn monomial_2_6_a7(space: &Arc<OrthSpace>) -> Result<Group, AtlasError> {
    require_gf3(space)?;
    let field = space.field();
    let basis: Vec<Vec<u32>> = (0..7).map(|i| space.basis_vector(i)).collect();
    let frame = orthogonal_frame(space, &basis, 2).ok_or_else(|| AtlasError::BadParams("no norm-2 frame".into()))?;
    let rows = Mat::from_rows(field, &frame);
    let gens = monomial_gens(field, 7).iter().map(|m| in_basis(&rows, m)).collect();
    Group::new(
        "2^6:A7",
        space,
        gens,
        Some(big(64) * factorial(7) / 2u32),
        Provenance::Constructed,
    )
}

/// 3^5:2^4:A5: the unipotent radical of the e1 stabilizer together with
/// the monomial group on a norm-1 frame of `⟨e1, f1⟩^⊥`.
pub fn p1_monomial(space: &Arc<OrthSpace>) -> Result<Group, AtlasError> {
    require_gf3(space)?;
    let field = space.field();
    let w1: Vec<Vec<u32>> = (2..7).map(|i| space.basis_vector(i)).collect();
    let frame = orthogonal_frame(space, &w1, 1).ok_or_else(|| AtlasError::BadParams("no norm-1 frame".into()))?;
    let mut all = vec![space.e(0), space.f(0)];
    all.extend(frame);
    let rows = Mat::from_rows(field, &all);
    let mut gens: Vec<Mat> = w1.iter().map(|w| space.siegel(&space.e(0), w)).collect();
    gens.extend(monomial_gens(field, 5).iter().map(|m| in_basis(&rows, m)));
    Group::new(
        "3^5:2^4:A5",
        space,
        gens,
        Some(big(243 * 16 * 60)),
        Provenance::Constructed,
    )
}

/// 3^3:SL3(3) = R':T.
pub fn r_derived_t(space: &Arc<OrthSpace>) -> Result<Group, AtlasError> {
    let (_, t) = parabolic_rt(space);
    let mut gens = r_derived_gens(space);
    gens.extend(t.gens);
    let q = space.field().order() as u64;
    let m = space.m() as u32;
    let order = big(q).pow(m * (m - 1) / 2) * ord(Family::SL, m, q);
    Group::new(
        format!("{q}^{}:SL{m}({q})", m * (m - 1) / 2),
        space,
        gens,
        Some(order),
        Provenance::Constructed,
    )
}

// ---------------------------------------------------------------------------
// Discovery.

/// Seeded search for a subgroup of the given order generated by elements
/// of the hinted orders. Every acceptance is certified exactly.
pub fn discover_subgroup<E: Element>(
    gens: &[E],
    identity: &E,
    target: &BigUint,
    hints: &[u64],
    attempts: usize,
    seed: u64,
) -> Option<Vec<E>> {
    let mut pr = ProductReplacement::new(gens, identity, seed);
    for attempt in 0..attempts {
        let mut pick = Vec::new();
        for &h in hints {
            let el = (0..200).find_map(|_| {
                let r = pr.next_element();
                let o = r.order_upto(2000)?;
                (o % h == 0).then(|| r.pow(o / h))
            })?;
            pick.push(el);
        }
        let opts = SsOptions {
            seed: seed ^ attempt as u64,
            target: Some(target.clone()),
            limit: Some(target.clone()),
            ..Default::default()
        };
        if let Ok(b) = schreier_sims(&pick, identity, &opts) {
            if &b.order() == target {
                return Some(pick);
            }
        }
    }
    None
}

fn discovered(
    name: &str,
    space: &Arc<OrthSpace>,
    gens: Vec<Mat>,
    order: BigUint,
    seed: u64,
) -> Result<Group, AtlasError> {
    Group::new(name, space, gens, Some(order), Provenance::Discovered(seed))
}

/// 2.L3(4) inside `n1_minus` = Ω6^-(3).
pub fn two_l34(space: &Arc<OrthSpace>, n1_minus: &Group, seed: u64) -> Result<Group, AtlasError> {
    let target = big(40320);
    let gens =
        discover_subgroup(&n1_minus.gens, &n1_minus.identity(), &target, &[7, 5], 4000, seed).ok_or_else(|| {
            AtlasError::CertificationFailure {
                name: "2.L3(4)".into(),
                detail: "discovery exhausted its attempts".into(),
            }
        })?;
    discovered("2.L3(4)", space, gens, target, seed)
}

fn element_key<E: Element>(b: &Bsgs<E>) -> u64 {
    let mut els: Vec<String> = b.elements().iter().map(|e| format!("{e:?}")).collect();
    els.sort_unstable();
    let mut h = FxHasher::default();
    els.hash(&mut h);
    h.finish()
}

/// The subgroups E:S with S ≅ S5 in the stabilizer of the line ⟨w⟩ in
/// Ω(W_1), distinct S found by seeded random pairs of elements of orders
/// 5 and 4.
pub fn e_s5_candidates(std: &Arc<OrthSpace>, aff: &AffineOmega4Minus, seed: u64) -> Result<Vec<Group>, AtlasError> {
    require_gf3(std)?;
    let xs = &aff.xspace;
    let field = xs.field();
    let id = Mat::identity(field, 7);
    let o5 = omega_on(xs, &aff.w1)?;
    let o5b = schreier_sims(&o5, &id, &SsOptions::with_target(seed, ord(Family::OmegaOdd, 2, 3)))?;
    let la = LineAction::new(field, 7);
    let (tb, _) = stabilizer(&o5b, &o5, &la, la.point(&aff.w), seed, 1 << 16)?;
    let els = tb.elements();
    let of_order = |k: u64| -> Vec<&Mat> { els.iter().filter(|g| g.order_upto(k) == Some(k)).collect() };
    let (fives, fours) = (of_order(5), of_order(4));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = FxHashSet::default();
    let mut out = Vec::new();
    let target = big(120);
    for attempt in 0..600u64 {
        if fives.is_empty() || fours.is_empty() {
            break;
        }
        let a = fives[rng.gen_range(0..fives.len())].clone();
        let b = fours[rng.gen_range(0..fours.len())].clone();
        let opts = SsOptions {
            seed: seed ^ attempt,
            target: Some(target.clone()),
            limit: Some(target.clone()),
            ..Default::default()
        };
        let Ok(sb) = schreier_sims(&[a.clone(), b.clone()], &id, &opts) else {
            continue;
        };
        if sb.order() != target || !seen.insert(element_key(&sb)) {
            continue;
        }
        let mut gens: Vec<Mat> = aff.e_gens.clone();
        gens.push(a);
        gens.push(b);
        let gens = gens.iter().map(|g| aff.similarity.transport(g)).collect();
        out.push(discovered(
            &format!("3^4:S5#{}", out.len()),
            std,
            gens,
            big(81 * 120),
            seed ^ attempt,
        )?);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Subgroups S of T ≅ SL4(3) for Ω9(3).

/// The S options: the 2.S5 candidates, 8∘SL2(5) and 2^{1+4}.A5, embedded
/// in Ω9(3) through the Levi factor.
#[derive(Clone, Debug)]
pub struct Row10Groups {
    pub two_s5: Vec<Group>,
    pub eight_a5: Group,
    pub extraspecial: Group,
}

fn expand(f3: &Arc<Field>, f9: &Field, a: &Mat) -> Mat {
    let n = a.rows();
    let mut m = Mat::zeros(f3, 2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            for (r, row) in mult_matrix(f9, a.get(i, j)).iter().enumerate() {
                for (c, &x) in row.iter().enumerate() {
                    m.set(2 * i + r, 2 * j + c, x);
                }
            }
        }
    }
    m
}

/// Frobenius on GF(9)^2 as a GF(3)-linear map.
fn frobenius4(f3: &Arc<Field>, f9: &Field) -> Mat {
    let blk: Vec<Vec<u32>> = (0..2u32).map(|r| f9.coeffs(f9.frobenius(3u32.pow(r)))).collect();
    let mut m = Mat::zeros(f3, 4, 4);
    for b in 0..2 {
        for r in 0..2 {
            for c in 0..2 {
                m.set(2 * b + r, 2 * b + c, blk[r][c]);
            }
        }
    }
    m
}

pub fn row10_groups(space: &Arc<OrthSpace>, seed: u64) -> Result<Row10Groups, AtlasError> {
    require_gf3(space)?;
    if space.m() != 4 {
        return Err(AtlasError::BadParams("needs m = 4".into()));
    }
    let f3 = space.field();
    let f9 = make_field(3, 2)?;
    let fail = |name: &str| AtlasError::CertificationFailure {
        name: name.into(),
        detail: "discovery exhausted its attempts".into(),
    };
    let sl29 = sl_generators(&f9, 2);
    let s_small = discover_subgroup(&sl29, &Mat::identity(&f9, 2), &big(120), &[5, 4], 2000, seed)
        .ok_or_else(|| fail("SL2(5)"))?;
    let s4: Vec<Mat> = s_small.iter().map(|g| expand(f3, &f9, g)).collect();
    let id4 = Mat::identity(f3, 4);
    let sb = schreier_sims(&s4, &id4, &SsOptions::with_target(seed, big(120)))?;

    // Elements g of ΓL2(9) ∩ SL4(3) normalizing S with g ∉ S, g² ∈ S.
    let frob = frobenius4(f3, &f9);
    let mut reps: Vec<Mat> = Vec::new();
    let q = f9.order();
    for code in 0..q.pow(4) {
        let e = [code % q, code / q % q, code / (q * q) % q, code / (q * q * q)];
        let a = Mat::from_rows(&f9, &[vec![e[0], e[1]], vec![e[2], e[3]]]);
        if a.det() == 0 {
            continue;
        }
        for semi in [false, true] {
            let lin = expand(f3, &f9, &a);
            let g = if semi { frob.mul(&lin) } else { lin };
            if g.det() != 1 || sb.contains(&g) || !sb.contains(&g.mul(&g)) {
                continue;
            }
            let gi = g.inv();
            if !s4.iter().all(|s| sb.contains(&gi.mul(s).mul(&g))) {
                continue;
            }
            if reps.iter().any(|r| sb.contains(&g.mul(&r.inv()))) {
                continue;
            }
            let els: Vec<Mat> = sb.elements().into_iter().flat_map(|x| [x.clone(), x.mul(&g)]).collect();
            let central = els
                .iter()
                .filter(|z| s4.iter().chain([&g]).all(|s| z.mul(s) == s.mul(z)))
                .count();
            if central == 2 {
                reps.push(g);
            }
        }
    }
    let mut two_s5 = Vec::new();
    for (k, g) in reps.iter().enumerate() {
        let mut gens: Vec<Mat> = s4.iter().map(|s| levi(space, s)).collect();
        gens.push(levi(space, g));
        two_s5.push(discovered(&format!("2.S5#{k}"), space, gens, big(240), seed)?);
    }

    let omega = f9.primitive();
    let scalar = expand(f3, &f9, &Mat::identity(&f9, 2).scale(omega));
    let mut gens: Vec<Mat> = s4.iter().map(|s| levi(space, s)).collect();
    gens.push(levi(space, &scalar));
    let eight_a5 = discovered("8.A5", space, gens, big(480), seed)?;

    let sp4 = sp_generators(f3, 4);
    let ex = discover_subgroup(&sp4, &id4, &big(1920), &[5, 4], 4000, seed).ok_or_else(|| fail("2^(1+4).A5"))?;
    let extraspecial = discovered(
        "2^(1+4).A5",
        space,
        ex.iter().map(|g| levi(space, g)).collect(),
        big(1920),
        seed,
    )?;
    Ok(Row10Groups {
        two_s5,
        eight_a5,
        extraspecial,
    })
}

// ---------------------------------------------------------------------------
// SL2(13) < Sp6(3) < SL6(3).

const SL2_13_ORDERS: [u64; 10] = [1, 2, 3, 4, 6, 7, 12, 13, 14, 26];

/// SL2(13) in Sp6(3), found from a fixed element x of order 13 and random
/// y with `y² = −1`: every element of order 4 in SL2(13) squares to the
/// central involution, and a Sylow 13-subgroup of Sp6(3) lies in about one
/// conjugate of SL2(13).
pub fn sl2_13_in_sp6(field: &Arc<Field>, seed: u64, attempts: usize) -> Option<Vec<Mat>> {
    let gens = sp_generators(field, 6);
    let id = Mat::identity(field, 6);
    let mut minus = Mat::zeros(field, 6, 6);
    for i in 0..6 {
        minus.set(i, i, field.neg(1));
    }
    let mut pr = ProductReplacement::new(&gens, &id, seed);
    let x = (0..10_000).find_map(|_| {
        let r = pr.next_element();
        let o = r.order_upto(400)?;
        (o % 13 == 0).then(|| r.pow(o / 13))
    })?;
    let target = big(2184);
    for attempt in 0..attempts {
        let r = pr.next_element();
        let Some(o) = r.order_upto(400) else { continue };
        if o % 4 != 0 {
            continue;
        }
        let y = r.pow(o / 4);
        if y.mul(&y) != minus {
            continue;
        }
        let words = [
            x.mul(&y),
            x.mul(&y).mul(&y),
            x.mul(&x).mul(&y),
            x.mul(&y).mul(&x).mul(&y).mul(&y),
        ];
        if !words
            .iter()
            .all(|w| w.order_upto(26).is_some_and(|k| SL2_13_ORDERS.contains(&k)))
        {
            continue;
        }
        let opts = SsOptions {
            seed: seed ^ attempt as u64,
            target: Some(target.clone()),
            limit: Some(target.clone()),
            ..Default::default()
        };
        if let Ok(b) = schreier_sims(&[x.clone(), y.clone()], &id, &opts) {
            if b.order() == target {
                return Some(vec![x, y]);
            }
        }
    }
    None
}

/// SL2(13) in the Levi factor SL6(3) of Ω13(3).
pub fn sl2_13_levi(space: &Arc<OrthSpace>, seed: u64) -> Result<Group, AtlasError> {
    require_gf3(space)?;
    if space.m() != 6 {
        return Err(AtlasError::BadParams("needs m = 6".into()));
    }
    let gens = sl2_13_in_sp6(space.field(), seed, 200_000).ok_or_else(|| AtlasError::CertificationFailure {
        name: "SL2(13)".into(),
        detail: "discovery exhausted its attempts".into(),
    })?;
    let lifted = gens.iter().map(|a| levi(space, a)).collect();
    discovered("SL2(13)", space, lifted, big(2184), seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::standard;

    #[test]
    fn permutation_heart_is_a_homomorphism() {
        let f = make_field(3, 1).unwrap();
        let a = cycle(9, &[0, 4, 8]);
        let b = cycle(9, &[1, 2, 3, 4, 5, 6, 7, 8, 0]);
        let ab: Vec<usize> = (0..9).map(|i| b[a[i]]).collect();
        let m = |p: &[usize]| perm_heart_matrix(&f, p, false);
        assert_eq!(m(&a).mul(&m(&b)), m(&ab));
        let g = perm_heart_gram(&f);
        assert_eq!(m(&b).mul(&g).mul(&m(&b).transpose()), g);
    }

    #[test]
    fn gf8_is_a_field() {
        for a in 1..8 {
            assert!((1..8).any(|b| gf8_mul(a, b) == 1));
        }
        assert_eq!(gf8_mul(2, 4), 0b011);
    }

    #[test]
    fn explicit_groups_certify() {
        let v = standard(3, 3).unwrap();
        for g in [
            a9_group(&v).unwrap(),
            a8_group(&v).unwrap(),
            s8_group(&v).unwrap(),
            ree_group(&v, false).unwrap(),
            ree_group(&v, true).unwrap(),
            sp62_group(&v).unwrap(),
            monomial_2_6_a7(&v).unwrap(),
            p1_monomial(&v).unwrap(),
            r_derived_t(&v).unwrap(),
        ] {
            g.certify(1).unwrap_or_else(|e| panic!("{}: {e}", g.name));
        }
    }
}
