//! The acceptance suite. Each criterion runs the library routine and
//! compares it against the brute-force answers in [`crate::oracle`].

use std::collections::HashSet;
use std::time::{Duration, Instant};

use cantor_star_core::gen::{
    random_clopen, random_cover, random_nowhere_dense_tree, random_porous_tree, random_word,
};
use cantor_star_core::gms::{gms_avoid, gms_schedule, lemma_aa_beta, smz_witness_translate};
use cantor_star_core::group::FiniteAbelianGroup;
use cantor_star_core::mask::{ternary_free_enum, ternary_mask_count, triangular_h};
use cantor_star_core::micro::{
    check_index_maps, diagonal_z, hit_set, mask_set_trace, micro_index, SmallSetsCover,
};
use cantor_star_core::star::{parity_family, star, StarAlgebra};
use cantor_star_core::tree::{
    escape_porous, is_k_porous_to_depth, lemma_xd_gamma, nd_gap, porous_density_check, PadPlan,
};
use cantor_star_core::{BinaryWord, BitVec, ClosedTree, Dyadic, ZeroMask};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::oracle;
use crate::trace::DEFAULT_SEED;

#[derive(Clone, Copy, Debug)]
pub struct Config {
    pub seed: u64,
    /// Largest Cantor-space depth any criterion materializes.
    pub depth: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            seed: DEFAULT_SEED,
            depth: cantor_star_core::cantor::MAX_DEPTH,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: usize,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
    #[serde(skip)]
    pub elapsed: Duration,
}

pub const CRITERIA: [(usize, &str); 10] = [
    (1, "star laws, exhaustive"),
    (2, "fixed-point characterization"),
    (3, "parity example"),
    (4, "GMS avoidance and least translate"),
    (5, "gap lemmas and nd_gap"),
    (6, "porous density bound"),
    (7, "escape constructions"),
    (8, "index formulas"),
    (9, "diagonal constructions"),
    (10, "measure cross-check"),
];

type Outcome = Result<String, String>;

pub fn run_criterion(id: usize, cfg: &Config) -> CriterionReport {
    let name = CRITERIA
        .iter()
        .find(|c| c.0 == id)
        .map_or("unknown criterion", |c| c.1);
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(id as u64));
    let outcome = match id {
        1 => star_laws(),
        2 => fixed_points(),
        3 => parity(),
        4 => gms(&mut rng),
        5 => gap_lemmas(&mut rng),
        6 => density(&mut rng, cfg.depth),
        7 => escapes(&mut rng),
        8 => index_formulas(),
        9 => diagonals(&mut rng, cfg.depth),
        10 => measures(cfg.depth),
        _ => Err(format!("no criterion {id}")),
    };
    let (pass, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CriterionReport {
        id,
        name,
        pass,
        detail,
        elapsed: start.elapsed(),
    }
}

pub fn run_all(cfg: &Config) -> Vec<CriterionReport> {
    CRITERIA.iter().map(|&(id, _)| run_criterion(id, cfg)).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn family_masks(f: &BitVec) -> Vec<u32> {
    f.iter_ones().map(|a| a as u32).collect()
}

fn star_laws() -> Outcome {
    let mut total = 0usize;
    for spec in ["3", "4", "2x2"] {
        let g = lib(FiniteAbelianGroup::parse(spec))?;
        let algebra = lib(StarAlgebra::new(&g))?;
        let table = oracle::PlainGroup::new(g.moduli()).cover_table();
        let n = algebra.subset_count();
        for bits in 0..1u64 << n {
            let f = BitVec::from_u64(bits, n);
            let mut g_fam = f.clone();
            if let Some(first) = f.first_one() {
                g_fam.set(first, false);
            }
            let report = algebra.check_laws(&f, &g_fam);
            if let Some(bad) = report.failures().next() {
                return Err(format!("{spec}: family {bits:#x} fails {}", bad.law.name()));
            }
            if let Some(m) = algebra.antitone_under_removal(&f) {
                return Err(format!("{spec}: family {bits:#x} antitone fails removing {m}"));
            }
            if !algebra.lemma_ccc(&f).agree() {
                return Err(format!("{spec}: family {bits:#x} ccc sides disagree"));
            }
            let want = oracle::star_by_definition(&table, &family_masks(&f));
            let got = family_masks(&algebra.star(&f));
            ensure(want == got, || format!("{spec}: family {bits:#x} star differs from definition"))?;
            total += 1;
        }
    }
    Ok(format!("{total} families over Z3, Z4, Z2xZ2"))
}

fn fixed_points() -> Outcome {
    let mut total = 0usize;
    for spec in ["2", "3"] {
        let g = lib(FiniteAbelianGroup::parse(spec))?;
        let algebra = lib(StarAlgebra::new(&g))?;
        let n = algebra.subset_count();
        let table = oracle::PlainGroup::new(g.moduli()).cover_table();
        // every family of the form A*, by definition
        let image: HashSet<Vec<u32>> = (0..1u64 << n)
            .map(|a| oracle::star_by_definition(&table, &family_masks(&BitVec::from_u64(a, n))))
            .collect();
        for bits in 0..1u64 << n {
            let f = BitVec::from_u64(bits, n);
            let out = lib(algebra.fixed_point(&f))?;
            ensure(out.agree(), || format!("{spec}: family {bits:#x} sides disagree"))?;
            ensure(out.rhs == image.contains(&family_masks(&f)), || {
                format!("{spec}: family {bits:#x} star image differs from definition")
            })?;
            total += 1;
        }
    }
    for spec in ["4", "2x2"] {
        let g = lib(FiniteAbelianGroup::parse(spec))?;
        let algebra = lib(StarAlgebra::new(&g))?;
        let n = algebra.subset_count();
        let image = lib(algebra.star_image())?;
        for bits in 0..1u64 << n {
            let f = BitVec::from_u64(bits, n);
            let fs = algebra.star(&f);
            let lhs = algebra.star(&fs) == f;
            // F = F** is witnessed by A = F*
            ensure(lhs == image.get(bits as usize), || {
                format!("{spec}: family {bits:#x} sides disagree")
            })?;
            total += 1;
        }
    }
    Ok(format!("{total} families over Z2, Z3, Z4, Z2xZ2"))
}

fn parity() -> Outcome {
    for m in 1..=4 {
        let f = lib(parity_family(m))?;
        let fs = lib(star(&f))?;
        ensure(fs == f, || format!("m={m}: star differs from the family"))?;
        let table = oracle::PlainGroup::new(f.group().moduli()).cover_table();
        let masks: Vec<u32> = f.members().iter().map(|a| a.mask() as u32).collect();
        let mut want = oracle::star_by_definition(&table, &masks);
        let mut have = masks.clone();
        want.sort_unstable();
        have.sort_unstable();
        ensure(want == have, || format!("m={m}: definition gives a different star"))?;
    }
    Ok("m = 1..4".into())
}

fn gms(rng: &mut ChaCha8Rng) -> Outcome {
    let (mut runs, mut attempts) = (0, 0);
    while runs < 100 {
        attempts += 1;
        if attempts > 10_000 {
            return Err(format!("only {runs} feasible instances generated"));
        }
        let count = rng.gen_range(1..=4);
        let trees: Vec<ClosedTree> = (0..count)
            .map(|_| {
                let d = rng.gen_range(4..=14);
                let density = rng.gen_range(0.5..1.0);
                random_nowhere_dense_tree(rng, d, density)
            })
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        let Ok(schedule) = gms_schedule(&trees) else { continue };
        let cover = random_cover(rng, &schedule);
        let run = lib(gms_avoid(&trees, &cover))?;
        for (n, (c, sigma)) in trees.iter().zip(cover.words()).enumerate() {
            ensure(oracle::translate_avoids(c, sigma, &run.y), || {
                format!("instance {runs}: y + [sigma_{n}] meets C_{n}")
            })?;
        }
        runs += 1;
    }
    for i in 0..1000 {
        let d = rng.gen_range(1..=6);
        let (px, pc) = (rng.gen_range(0.05..0.5), rng.gen_range(0.05..0.5));
        let x = lib(random_clopen(rng, d, px))?;
        let c = lib(random_clopen(rng, d, pc))?;
        let got = lib(smz_witness_translate(&x, &ClosedTree::new(c.clone())))?;
        let want = oracle::least_disjoint_translate(&x, &c);
        let got = got.map(|z| z.to_index() as usize);
        ensure(got == want, || {
            format!("pair {i} at depth {d}: {got:?} vs {want:?}")
        })?;
        let sum = lib(x.xor_sumset(&c))?;
        let plain = oracle::xor_sumset(&x, &c);
        ensure((0..1 << d).all(|p| sum.contains_leaf(p) == plain[p]), || {
            format!("pair {i}: sumset differs from pair enumeration")
        })?;
    }
    Ok(format!("100 GMS instances ({attempts} drawn), 1000 translate pairs"))
}

fn gap_lemmas(rng: &mut ChaCha8Rng) -> Outcome {
    let mut xd = 0;
    while xd < 200 {
        let d = rng.gen_range(3..=10);
        let density = rng.gen_range(0.3..1.0);
        let c = lib(random_nowhere_dense_tree(rng, d, density))?;
        let m = rng.gen_range(0..d);
        let k = lib(nd_gap(&c, m))?;
        let want = oracle::min_gap(&c, m);
        ensure(want == Some(k), || format!("nd_gap {k} vs brute force {want:?} at m={m}"))?;
        let alpha = random_word(rng, m);
        let beta = random_word(rng, m + k);
        let gamma = lib(lemma_xd_gamma(&c, m, k, &alpha, &beta))?;
        ensure(gamma.len() == m + k && alpha.is_prefix_of(&gamma), || {
            format!("gamma {gamma} does not extend {alpha} to length {}", m + k)
        })?;
        ensure(oracle::translate_avoids(&c, &gamma, &beta), || {
            format!("[gamma] + [beta] meets C (gamma {gamma}, beta {beta})")
        })?;
        xd += 1;
    }
    for i in 0..200 {
        let k = 1 + i % 3;
        let d = rng.gen_range(k..=10);
        let extra = rng.gen_range(0.0..0.5);
        let e = lib(random_porous_tree(rng, d, k, extra))?;
        ensure(oracle::is_porous(&e, k), || format!("case {i}: generated tree not {k}-porous"))?;
        let m = rng.gen_range(0..=d - k);
        let alpha = random_word(rng, m);
        let tau = random_word(rng, m + k);
        let beta = lib(lemma_aa_beta(&e, k, &alpha, &tau))?;
        ensure(beta.len() == m + k && alpha.is_prefix_of(&beta), || {
            format!("beta {beta} does not extend {alpha}")
        })?;
        ensure(oracle::translate_avoids(&e, &beta, &tau), || {
            format!("[beta] + [tau] meets E (beta {beta}, tau {tau})")
        })?;
    }
    Ok("200 gap-lemma cases, 200 porous-lemma cases".into())
}

/// `count / 2^d ≤ (1 − 2^−k)^⌊d/k⌋`, in integers.
fn density_bound_holds(count: u64, d: usize, k: usize) -> bool {
    let q = (d / k) as u32;
    let lhs = u128::from(count) << (k as u32 * q);
    let rhs = ((1u128 << k) - 1).pow(q) << d;
    lhs <= rhs
}

fn density(rng: &mut ChaCha8Rng, cap: usize) -> Outcome {
    let mut checked = Vec::new();
    for k in 1..=3usize {
        for mult in 6..=10 {
            let d = k * mult;
            if d > cap {
                continue;
            }
            let t = lib(random_porous_tree(rng, d, k, 0.3))?;
            let porous = if d <= 12 {
                oracle::is_porous(&t, k)
            } else {
                lib(is_k_porous_to_depth(&t, k))?
            };
            ensure(porous, || format!("k={k} d={d}: generated tree not porous"))?;
            ensure(lib(porous_density_check(&t, k))?, || {
                format!("k={k} d={d}: library density check fails")
            })?;
            ensure(density_bound_holds(t.leaf_count(), d, k), || {
                format!("k={k} d={d}: {} leaves exceed the bound", t.leaf_count())
            })?;
            checked.push(format!("{k}/{d}"));
        }
    }
    Ok(format!("k/depth {}", checked.join(" ")))
}

fn escapes(rng: &mut ChaCha8Rng) -> Outcome {
    // (mask, (k, depth) per tree, expected closed-form starts)
    type Setup = (ZeroMask, &'static [(usize, usize)], &'static [usize]);
    let setups: [Setup; 3] = [
        (ZeroMask::Pow2Pairs, &[(1, 22), (2, 22), (3, 22)], &[6, 10, 18]),
        (ZeroMask::TriangularBlocks, &[(1, 16), (2, 16), (3, 16)], &[2, 6, 12]),
        (ZeroMask::TernaryBlocks, &[(1, 4), (3, 12), (9, 26)], &[1, 5, 17]),
    ];
    let mut lines = Vec::new();
    for (mask, shape, closed_starts) in setups {
        for round in 0..3 {
            let trees: Vec<(usize, ClosedTree)> = shape
                .iter()
                .map(|&(k, d)| random_porous_tree(rng, d, k, 0.3).map(|t| (k, t)))
                .collect::<Result<_, _>>()
                .map_err(|e| e.to_string())?;
            let len = shape.iter().map(|s| s.1).max().unwrap_or(0);
            let table = oracle::mask_table(mask.name(), len.max(1));
            for plan in [PadPlan::Greedy, PadPlan::ClosedForm] {
                let e = escape_porous(mask, &trees, plan, len)
                    .map_err(|err| format!("{} {plan:?}: {err}", mask.name()))?;
                ensure(oracle::respects_mask(&table, &e.word), || {
                    format!("{} {plan:?}: {} sets a masked coordinate", mask.name(), e.word)
                })?;
                for (j, (_, t)) in trees.iter().enumerate() {
                    ensure(oracle::word_avoids(t, &e.word), || {
                        format!("{} {plan:?}: escape word meets tree {j}", mask.name())
                    })?;
                }
                if plan == PadPlan::ClosedForm {
                    let starts: Vec<usize> = e.steps.iter().map(|s| s.start).collect();
                    ensure(starts == closed_starts, || {
                        format!("{}: closed-form starts {starts:?}", mask.name())
                    })?;
                }
            }
            if round == 0 {
                lines.push(format!("{} starts {closed_starts:?}", mask.name()));
            }
        }
    }
    Ok(lines.join("; "))
}

fn index_formulas() -> Outcome {
    let tri = oracle::triangular_blocks_below(40_000);
    let positions: Vec<usize> = (0..tri.len()).filter(|&i| tri[i]).collect();
    for k in 1..=10_000 {
        let h = lib(triangular_h(k))?;
        ensure(h == positions[k - 1], || format!("h({k}) = {h}, enumeration {}", positions[k - 1]))?;
        ensure(h < 3 * k, || format!("h({k}) = {h} is not below 3k"))?;
    }
    let ter = oracle::ternary_blocks_below(600_000);
    let free: Vec<usize> = (0..ter.len()).filter(|&i| !ter[i]).collect();
    for n in 1..=100_000 {
        let kn = lib(ternary_free_enum(n))?;
        ensure(kn == free[n - 1], || format!("k_{n} = {kn}, scan {}", free[n - 1]))?;
        ensure(kn < 5 * n, || format!("k_{n} = {kn} is not below 5n"))?;
    }
    let mut below = 0;
    for (b, &masked) in ter.iter().enumerate().take(200_000) {
        ensure(ternary_mask_count(b) == below, || format!("mask count below {b}"))?;
        below += usize::from(masked);
    }
    lib(check_index_maps(10, 10_000))?;
    let mut seen = HashSet::new();
    for j in 1..=10usize {
        for n in 1..=10_000usize {
            let i = (n << j) - ((1 << (j - 1)) - 1);
            ensure(micro_index(j, n) == i, || format!("i_{j}({n})"))?;
            ensure(seen.insert(i), || format!("index {i} reached twice"))?;
        }
    }
    Ok("h to 1e4, k_n to 1e5, index maps j<=10 n<=1e4".into())
}

fn diagonals(rng: &mut ChaCha8Rng, cap: usize) -> Outcome {
    let mut notes = Vec::new();
    for d in [10, 20, 30].into_iter().filter(|&d| d <= cap) {
        // triangular blocks, covers of lengths 3m
        let table = oracle::triangular_blocks_below(d);
        let sigma: Vec<BinaryWord> = (1..=d / 3).map(|m| random_word(rng, 3 * m)).collect();
        let z = lib(diagonal_z(ZeroMask::TriangularBlocks, &sigma, d))?;
        let trace = oracle::mask_trace_words(&table, d);
        for e in &trace {
            let x = lib(z.xor(e))?;
            ensure(!oracle::hit(&sigma, &x), || format!("d={d}: z + {e} is hit"))?;
        }
        if d <= 20 {
            let sum = lib(lib(mask_set_trace(ZeroMask::TriangularBlocks, d))?
                .xor_sumset(&lib(hit_set(&sigma, d))?))?;
            ensure(!sum.contains_leaf(z.to_index() as usize), || {
                format!("d={d}: library sumset contains z")
            })?;
        }
        notes.push(format!("triangular d={d} over {} trace points", trace.len()));

        // ternary blocks, covers of lengths 5n
        let table = oracle::ternary_blocks_below(d);
        let sigma: Vec<BinaryWord> = (1..=d / 5).map(|n| random_word(rng, 5 * n)).collect();
        let z = lib(diagonal_z(ZeroMask::TernaryBlocks, &sigma, d))?;
        ensure(oracle::respects_mask(&table, &z), || format!("d={d}: z leaves the trace"))?;
        ensure(!oracle::hit(&sigma, &z), || format!("d={d}: z is hit"))?;
        let trace = oracle::mask_trace_words(&table, d);
        ensure(trace.contains(&z), || format!("d={d}: z missing from the enumerated trace"))?;
        notes.push(format!("ternary d={d}"));
    }
    ensure(!notes.is_empty(), || "depth cap below 10".into())?;
    Ok(notes.join(", "))
}

fn measures(cap: usize) -> Outcome {
    let mut notes = Vec::new();
    for d in [12, 20, 30] {
        if d > cap {
            return Err(format!("depth {d} exceeds the cap {cap}"));
        }
        let trace = lib(mask_set_trace(ZeroMask::TriangularBlocks, d))?;
        let cover = lib(SmallSetsCover::triangular(d))?;
        let route = cover.tail_measure(0);
        let masked = oracle::triangular_blocks_below(d).iter().filter(|&&b| b).count();
        let direct = Dyadic::half_pow(masked as u32);
        ensure(trace.measure() == route && route == direct, || {
            format!("d={d}: trace {} route {route} direct {direct}", trace.measure())
        })?;
        ensure(cover.ratio_bound_holds(), || format!("d={d}: a block family exceeds half"))?;
        if d <= 12 {
            ensure(lib(cover.to_clopen(d, 0))? == trace, || {
                format!("d={d}: constrained set differs from the trace")
            })?;
        }
        notes.push(format!("d={d}: {route}"));
    }
    Ok(notes.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn density_bound_in_integers() {
        // 1-porous at depth 2: at most one leaf survives per level pair
        assert!(density_bound_holds(1, 2, 1));
        assert!(!density_bound_holds(2, 2, 1));
        assert!(density_bound_holds(9, 4, 2));
        assert!(!density_bound_holds(10, 4, 2));
    }

    #[test]
    fn quick_criteria_pass() {
        let cfg = Config::default();
        for id in [3, 8] {
            let r = run_criterion(id, &cfg);
            assert!(r.pass, "{}: {}", r.name, r.detail);
        }
    }
}
