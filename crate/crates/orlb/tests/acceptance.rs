//! Acceptance gate: one PASS/FAIL line per criterion, then a single assertion
//! that every criterion passed.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use orlb::bench::{self, BenchSpec};
use orlb_core::bipartite::{adjacent_bipartite, encode_bipartite, owners_before, owns};
use orlb_core::bitio::ceil_log2;
use orlb_core::dict::{encode_compressed, encode_sorted, log2_binomial_ceil, DictBackend, DictLayout};
use orlb_core::graph::{bfs_reach, condense, random_digraph, random_poset, PosetModel, StrictOrder};
use orlb_core::reach::label_digraph;
use orlb_core::scheme::{
    encode_detailed, size_report, Comparison, Labeling, Profile, SchemeConfig, SchemeParams, Structure,
};
use orlb_core::universal::{enumerate_posets, universal_check};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    id: u32,
    name: &'static str,
    pass: bool,
    detail: String,
}

fn expected(o: &StrictOrder, u: usize, v: usize) -> Comparison {
    if o.less(u, v) {
        Comparison::Less
    } else if o.less(v, u) {
        Comparison::Greater
    } else {
        Comparison::Incomparable
    }
}

/// One encoded instance and every check the per-instance criteria need.
#[derive(Default)]
struct InstanceChecks {
    pairs: usize,
    mismatches: usize,
    max_inspected: usize,
    inspection_budget: f64,
    within_label_bound: bool,
    size_ledger_errors: Vec<String>,
    structure_errors: Vec<String>,
    overflow_edges: usize,
}

fn log2(x: f64) -> f64 {
    x.log2()
}

fn check_layout(name: &str, layout: &DictLayout, n: usize, errors: &mut Vec<String>) {
    let k = layout.capacity;
    let max = layout.max_payload_len();
    if k == 0 {
        if max != 0 {
            errors.push(format!("{name}: capacity 0 but {max} bits"));
        }
        return;
    }
    match layout.backend {
        DictBackend::Sorted => {
            if max as f64 > 4.0 * k as f64 * log2(n as f64) {
                errors.push(format!("{name}: sorted {max} bits > 4k log n (k={k}, n={n})"));
            }
        }
        DictBackend::Compressed => {
            let bound = log2_binomial_ceil((n + k) as u64, k as u64) + ceil_log2(k as u64 + 1);
            if max > bound as usize {
                errors.push(format!("{name}: compressed {max} bits > {bound}"));
            }
        }
    }
}

/// Number of `z` with `x < z < y`.
fn covered(o: &StrictOrder, x: usize, y: usize) -> usize {
    o.up_set(x).intersection_len(o.down_set(y))
}

fn check_structure(st: &Structure, params: &SchemeParams, derived: bool, errors: &mut Vec<String>) {
    let o = &st.order;
    let n = o.n();
    let nf = n as f64;
    let (gamma, delta) = (params.gamma, params.delta);
    let light_bound = params.light_degree_bound();
    let threshold = params.heavy_threshold();
    let light = |x: usize, y: usize| covered(o, x, y) < threshold;

    match params.profile {
        Profile::Tradeoff => {
            if (-gamma * params.s as f64).exp() * nf * nf < 1.0 && !st.residual_heavy.is_empty() {
                errors.push(format!("{} heavy pairs escaped S", st.residual_heavy.len()));
            }
            if (-delta * delta * params.t as f64).exp() * nf < 1.0 {
                if !st.pair_cover.residual.is_empty() {
                    errors.push(format!("{} hubs escaped T", st.pair_cover.residual.len()));
                }
                for &z in &st.hubs {
                    if !st.pair_cover.pairs.iter().any(|&(x, y)| o.less(x, z) && o.less(z, y)) {
                        errors.push(format!("hub {z} has no covering pair"));
                    }
                }
            }
        }
        Profile::Fast if derived => {
            if st.residual_heavy.len() as f64 > gamma * gamma * nf * nf {
                errors.push(format!("|B'| = {} > γ²n²", st.residual_heavy.len()));
            }
            if st.pair_cover.residual.len() as f64 > delta * nf {
                errors.push(format!("|R| = {} > δn", st.pair_cover.residual.len()));
            }
        }
        Profile::Fast => {}
    }
    // greedy picks a vertex covering at least a γ fraction of what is left
    if st.residual_heavy.len() as f64 > (-gamma * params.s as f64).exp() * nf * nf {
        errors.push(format!("|B'| = {} > exp(-γs) n²", st.residual_heavy.len()));
    }

    for (slot, &x) in st.t_vertices.iter().enumerate() {
        let minus: BTreeSet<usize> = (0..n).filter(|&v| o.less(v, x) && light(v, x)).collect();
        let plus: BTreeSet<usize> = (0..n).filter(|&v| o.less(x, v) && light(x, v)).collect();
        if minus != st.minus_members[slot].iter().collect() || plus != st.plus_members[slot].iter().collect() {
            errors.push(format!("light neighbourhoods of {x} disagree with the oracle"));
        }
        for &v in &minus {
            let out = minus.iter().filter(|&&w| o.less(v, w) && light(v, w)).count();
            if out > light_bound {
                errors.push(format!("out-degree {out} of {v} in G0-({x}) > {light_bound}"));
            }
        }
        for &v in &plus {
            let inn = plus.iter().filter(|&&w| o.less(w, v) && light(w, v)).count();
            if inn > light_bound {
                errors.push(format!("in-degree {inn} of {v} in G0+({x}) > {light_bound}"));
            }
        }
    }

    let g1 = &st.residual_graph;
    let oriented: BTreeSet<(usize, usize)> =
        g1.out.iter().enumerate().flat_map(|(u, outs)| outs.iter().map(move |&v| (u.min(v), u.max(v)))).collect();
    let residual: BTreeSet<(usize, usize)> = st.residual_heavy.iter().copied().collect();
    if oriented != residual || g1.edge_count() != residual.len() {
        errors.push("G1 orientation does not match B'".into());
    }
    let max_out = g1.out.iter().map(Vec::len).max().unwrap_or(0);
    if max_out * (max_out + 1) / 2 > residual.len() {
        errors.push(format!("G1 out-degree {max_out} above the degeneracy of {} edges", residual.len()));
    }
    if derived && max_out > params.residual_degeneracy_bound() {
        errors.push(format!("G1 out-degree above ⌊2γn⌋ = {}", params.residual_degeneracy_bound()));
    }
}

fn check_instance(o: &StrictOrder, params: &SchemeParams, derived: bool) -> (InstanceChecks, Labeling) {
    let n = o.n();
    let (l, st) = encode_detailed(o, params).unwrap();
    let mut c = InstanceChecks { overflow_edges: st.overflow.edge_count(), ..Default::default() };
    for u in 0..n {
        for v in 0..n {
            let (cmp, inspected) = l.comparable(u, v).unwrap();
            c.pairs += 1;
            c.mismatches += usize::from(cmp != expected(o, u, v));
            c.max_inspected = c.max_inspected.max(inspected);
        }
    }
    let lg = log2(n.max(2) as f64);
    c.inspection_budget = 2.0 * params.s as f64 + 1000.0 * lg * lg;
    let report = size_report(&l, params).unwrap();
    c.within_label_bound = report.all_within_bound();

    let d = l.decoder();
    let errs = &mut c.size_ledger_errors;
    check_layout("light", &d.light, n, errs);
    check_layout("nonhub", &d.nonhub, n, errs);
    check_layout("residual", &d.residual, n, errs);
    check_layout("overflow", &d.overflow, n, errs);
    let g = l.global();
    let mut bipartite_total = 0;
    for (v, s) in report.sections.iter().enumerate() {
        bipartite_total += s.bipartite;
        if s.bipartite > n.div_ceil(4) + 1 {
            errs.push(format!("bipartite payload {} > ⌈n/4⌉+1 at vertex {v}", s.bipartite));
        }
        if s.cover_strings != 2 * g.cover.len() {
            errs.push(format!("S-strings {} != 2|S|", s.cover_strings));
        }
        if s.nonhub_dict > d.nonhub.max_payload_len()
            || s.residual_dict > d.residual.max_payload_len()
            || s.overflow_dict > d.overflow.max_payload_len()
        {
            errs.push(format!("dictionary section above its layout at vertex {v}"));
        }
    }
    if bipartite_total != g.p * g.q {
        errs.push(format!("bipartite total {bipartite_total} != pq = {}", g.p * g.q));
    }
    check_structure(&st, params, derived, &mut c.structure_errors);
    (c, l)
}

struct Instance {
    label: String,
    n: usize,
    profile: Profile,
    forced: bool,
    checks: InstanceChecks,
}

fn comparability_instances() -> Vec<Instance> {
    let densities = [0.02, 0.05, 0.1, 0.2, 0.4];
    let mut out = Vec::new();
    for seed in 0..200u64 {
        let n = 10 + (seed as usize * 37) % 291;
        let model = if seed % 2 == 0 { PosetModel::DagClosure } else { PosetModel::Layered };
        let p = densities[(seed as usize / 2) % densities.len()];
        let o = random_poset(n, model, p, seed).unwrap();
        for profile in [Profile::Tradeoff, Profile::Fast] {
            let params = SchemeConfig::new(profile).resolve(n);
            let (checks, _) = check_instance(&o, &params, true);
            out.push(Instance { label: format!("seed {seed} n {n} {profile:?}"), n, profile, forced: false, checks });
        }
    }
    out
}

/// Small hand-picked γ, δ, ℓ, t that make heavy pairs, hubs, residual hubs
/// and overflow edges appear at n = 60.
fn forced_instances() -> Vec<Instance> {
    let knobs = [(0.08, 0.05, 0.15, 5, 3, 5), (0.1, 0.1, 0.2, 3, 2, 2), (0.3, 0.02, 0.1, 10, 1, 3), (0.2, 0.03, 0.12, 4, 2, 1)];
    let mut out = Vec::new();
    for seed in 0..6u64 {
        for model in [PosetModel::DagClosure, PosetModel::Layered] {
            for &(p, gamma, delta, ell, t, s) in &knobs {
                let o = random_poset(60, model, p, seed).unwrap();
                for profile in [Profile::Tradeoff, Profile::Fast] {
                    let params = SchemeParams {
                        profile,
                        n: 60,
                        s,
                        gamma,
                        delta,
                        ell,
                        t,
                        dict: profile.default_backend(),
                    };
                    let (checks, _) = check_instance(&o, &params, false);
                    out.push(Instance {
                        label: format!("forced seed {seed} {model:?} γ={gamma} {profile:?}"),
                        n: 60,
                        profile,
                        forced: true,
                        checks,
                    });
                }
            }
        }
    }
    out
}

fn first_errors<'a>(items: impl Iterator<Item = &'a String>) -> String {
    items.take(3).cloned().collect::<Vec<_>>().join("; ")
}

fn criterion_1(real: &[&Instance]) -> Outcome {
    let pairs: usize = real.iter().map(|i| i.checks.pairs).sum();
    let bad: Vec<&&Instance> = real.iter().filter(|i| i.checks.mismatches > 0).collect();
    Outcome {
        id: 1,
        name: "comparability oracle",
        pass: bad.is_empty(),
        detail: format!(
            "{} labelings (200 posets x 2 profiles, n in 10..=300), {pairs} ordered pairs, {} instances with mismatches{}",
            real.len(),
            bad.len(),
            bad.first().map(|i| format!(" (first: {})", i.label)).unwrap_or_default()
        ),
    }
}

fn criterion_2() -> Outcome {
    let mut pairs = 0;
    let mut mismatches = 0;
    let mut acyclic = 0;
    for seed in 0..50u64 {
        let n = 20 + (seed as usize * 53) % 181;
        let d = random_digraph(n, 2.0 / n as f64, 1000 + seed).unwrap();
        if condense(&d).members.iter().all(|m| m.len() == 1) {
            acyclic += 1;
        }
        let profile = if seed % 2 == 0 { Profile::Tradeoff } else { Profile::Fast };
        let r = label_digraph(&d, &SchemeConfig::new(profile)).unwrap();
        for u in 0..n {
            let reach = bfs_reach(&d, u);
            for v in 0..n {
                pairs += 1;
                mismatches += usize::from(r.reaches(u, v).unwrap().adjacent != reach.contains(v));
            }
        }
    }
    Outcome {
        id: 2,
        name: "reachability oracle",
        pass: mismatches == 0 && acyclic == 0,
        detail: format!("50 digraphs with cycles (n <= 200), {pairs} ordered pairs, {mismatches} mismatches, {acyclic} inputs without a cycle"),
    }
}

fn criterion_3(real: &[&Instance]) -> Outcome {
    let tradeoff: Vec<&&Instance> = real.iter().filter(|i| i.profile == Profile::Tradeoff && i.n >= 4).collect();
    let bad = tradeoff.iter().filter(|i| !i.checks.within_label_bound).count();
    Outcome {
        id: 3,
        name: "tradeoff label bound n/4 + 1000 s^(-1/3) n log^2 n + 2s",
        pass: bad == 0,
        detail: format!("{} tradeoff labelings, global section counted in every label, {bad} over the bound", tradeoff.len()),
    }
}

fn criterion_4(all: &[Instance]) -> Outcome {
    let errors: Vec<&String> = all.iter().flat_map(|i| &i.checks.size_ledger_errors).collect();
    Outcome {
        id: 4,
        name: "component size ledgers",
        pass: errors.is_empty(),
        detail: format!(
            "{} labelings (including {} with forced small parameters): sorted <= 4k log n, compressed <= ceil(log C(n+k,k)) + ceil(log(k+1)), bipartite <= ceil(n/4)+1 with total pq, S-strings = 2|S|; {} violations {}",
            all.len(),
            all.iter().filter(|i| i.forced).count(),
            errors.len(),
            first_errors(errors.into_iter())
        ),
    }
}

fn criterion_5(real: &[&Instance]) -> Outcome {
    let tradeoff: Vec<&&Instance> = real.iter().filter(|i| i.profile == Profile::Tradeoff && i.n >= 4).collect();
    let bad = tradeoff.iter().filter(|i| i.checks.max_inspected as f64 > i.checks.inspection_budget).count();
    let worst = tradeoff
        .iter()
        .map(|i| i.checks.max_inspected as f64 / i.checks.inspection_budget)
        .fold(0.0, f64::max);
    Outcome {
        id: 5,
        name: "inspection budget 2s + 1000 log^2 n",
        pass: bad == 0,
        detail: format!(
            "{} tradeoff labelings, every ordered pair queried, {bad} over budget, worst inspected/budget = {worst:.4}",
            tradeoff.len()
        ),
    }
}

fn criterion_6(all: &[Instance]) -> Outcome {
    let errors: Vec<&String> = all.iter().flat_map(|i| &i.checks.structure_errors).collect();
    Outcome {
        id: 6,
        name: "structural cover and degree properties",
        pass: errors.is_empty(),
        detail: format!(
            "{} labelings ({} forced): cover of heavy pairs and hubs, residual bounds (profile targets on derived parameters only), light-graph degrees against an independent covered-count oracle, G1 degeneracy; {} violations {}",
            all.len(),
            all.iter().filter(|i| i.forced).count(),
            errors.len(),
            first_errors(errors.into_iter())
        ),
    }
}

fn criterion_7() -> Outcome {
    let mut graphs = 0u64;
    let mut wrong = 0u64;
    for p in 0..=8usize {
        for q in 0..=8 - p {
            let slots: Vec<(usize, usize)> = (0..p).flat_map(|i| (0..q).map(move |j| (i, j))).collect();
            for mask in 0u32..1 << slots.len() {
                let edges: Vec<(usize, usize)> =
                    slots.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &e)| e).collect();
                let l = encode_bipartite(p, q, &edges).unwrap();
                graphs += 1;
                let ok = slots
                    .iter()
                    .all(|&(i, j)| adjacent_bipartite(&l.rows[i], &l.columns[j]).unwrap() == (mask >> (i * q + j) & 1 == 1));
                wrong += u64::from(!ok);
            }
        }
    }
    let mut closed_form_errors = 0u64;
    for p in 1..=50 {
        for q in 1..=50 {
            for j in 0..q {
                let mut count = 0;
                for i in 0..p {
                    closed_form_errors += u64::from(owners_before(i, j, p, q) != count);
                    count += usize::from(owns(i, j, p, q));
                }
            }
        }
    }
    Outcome {
        id: 7,
        name: "bipartite exhaustive correctness",
        pass: wrong == 0 && closed_form_errors == 0,
        detail: format!("{graphs} bipartite graphs with p+q <= 8, {wrong} decoded wrongly; owner-count closed form vs loop for p,q <= 50: {closed_form_errors} differences"),
    }
}

fn criterion_8() -> Outcome {
    let mut sets = 0u64;
    let mut wrong = 0u64;
    let mut check = |n: usize, set: &[usize], k_max: usize| {
        let sorted = encode_sorted(n, set, k_max).unwrap();
        let compressed = encode_compressed(n, set, k_max).unwrap();
        sets += 1;
        for x in 0..n {
            let want = set.contains(&x);
            wrong += u64::from(sorted.contains(x) != want || compressed.contains(x) != want);
        }
    };
    // every subset for small universes, random subsets of every size above
    for n in 1..=10usize {
        for mask in 0u32..1 << n {
            let set: Vec<usize> = (0..n).filter(|&x| mask >> x & 1 == 1).collect();
            for k_max in set.len()..=n.min(16) {
                check(n, &set, k_max);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for n in 11..=64usize {
        for k_max in 0..=16usize {
            for size in 0..=k_max.min(n) {
                let mut set = BTreeSet::new();
                while set.len() < size {
                    set.insert(rng.random_range(0..n));
                }
                check(n, &set.into_iter().collect::<Vec<_>>(), k_max);
            }
        }
    }
    Outcome {
        id: 8,
        name: "dictionary equivalence",
        pass: wrong == 0,
        detail: format!("{sets} (n, set, k_max) cases with n <= 64, k_max <= 16, every x queried on both backends; {wrong} disagreements with naive membership"),
    }
}

/// Irreflexive, antisymmetric, transitive relations on three points, by filtering all 2^6 candidates.
fn filtered_poset_count_n3() -> usize {
    let slots = [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)];
    (0u32..64)
        .filter(|mask| {
            let rel = |u: usize, v: usize| slots.iter().position(|&s| s == (u, v)).is_some_and(|b| mask >> b & 1 == 1);
            let anti = (0..3).all(|u| (0..3).all(|v| !(rel(u, v) && rel(v, u))));
            let trans = (0..3).all(|u| (0..3).all(|v| (0..3).all(|w| !(rel(u, v) && rel(v, w)) || rel(u, w))));
            anti && trans
        })
        .count()
}

fn criterion_9() -> Outcome {
    let mut detail = String::new();
    let mut pass = true;
    for profile in [Profile::Tradeoff, Profile::Fast] {
        for n in 1..=5 {
            let r = universal_check(n, &SchemeConfig::new(profile), 0).unwrap();
            pass &= r.injective && r.embeds;
            write!(detail, "{profile:?} n={n}: {} posets ok={}; ", r.posets, r.injective && r.embeds).unwrap();
        }
    }
    let enumerated = enumerate_posets(3).unwrap().len();
    let filtered = filtered_poset_count_n3();
    pass &= enumerated == 19 && filtered == 19;
    write!(detail, "n=3 enumeration {enumerated}, exhaustive filter {filtered}").unwrap();
    Outcome { id: 9, name: "universal embedding for n <= 5", pass, detail }
}

fn criterion_10() -> Outcome {
    let sizes = vec![100, 300, 1000, 3000];
    let spec = BenchSpec {
        sizes: sizes.clone(),
        models: vec![PosetModel::Layered],
        seeds: vec![0, 1, 2],
        profiles: vec![Profile::Tradeoff, Profile::Fast],
        p: 0.2,
        s: None,
        query_cap: 2_000,
    };
    let rows = bench::run(&spec).unwrap();
    let csv = bench::to_csv(&rows);
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("acceptance_bench.csv");
    std::fs::write(&path, &csv).unwrap();
    let ratios = |profile: Profile| -> Vec<f64> {
        sizes
            .iter()
            .map(|&n| {
                rows.iter()
                    .filter(|r| r.n == n && r.profile == profile)
                    .map(|r| r.max_label_bits as f64 / n as f64)
                    .fold(0.0, f64::max)
            })
            .collect()
    };
    let fast = ratios(Profile::Fast);
    let tradeoff = ratios(Profile::Tradeoff);
    let decreasing = |v: &[f64]| v.windows(2).all(|w| w[1] < w[0]);
    let fmt = |v: &[f64]| v.iter().map(|r| format!("{r:.3}")).collect::<Vec<_>>().join(", ");
    Outcome {
        id: 10,
        name: "max label bits / n decreasing on layered posets",
        pass: decreasing(&fast),
        detail: format!(
            "n = 100, 300, 1000, 3000, p = 0.2, 3 seeds, CSV at {}; compressed-dictionary profile (fast): {} ({}); sorted-dictionary profile (tradeoff, informational): {} ({}); the n/4 leading term itself is not observable at this scale",
            path.display(),
            fmt(&fast),
            if decreasing(&fast) { "decreasing" } else { "not decreasing" },
            fmt(&tradeoff),
            if decreasing(&tradeoff) { "decreasing" } else { "not decreasing: k log n sorted dictionaries grow with log n" },
        ),
    }
}

fn criterion_11(all: &[Instance]) -> Outcome {
    let with_overflow: Vec<&Instance> = all.iter().filter(|i| i.checks.overflow_edges > 0).collect();
    let edges: usize = all.iter().map(|i| i.checks.overflow_edges).sum();
    let max = all.iter().map(|i| i.checks.overflow_edges).max().unwrap_or(0);
    let bad = with_overflow.iter().filter(|i| i.checks.mismatches > 0).count();
    Outcome {
        id: 11,
        name: "overflow accounting",
        pass: bad == 0 && !with_overflow.is_empty(),
        detail: format!(
            "{} of {} labelings carry overflow edges ({edges} in total, at most {max} in one labeling; default parameters contribute {}), {bad} of them decode incorrectly; no bound asserted",
            with_overflow.len(),
            all.len(),
            all.iter().filter(|i| !i.forced).map(|i| i.checks.overflow_edges).sum::<usize>()
        ),
    }
}

fn report(o: Outcome) -> Outcome {
    println!("criterion {:>2} {} {}: {}", o.id, if o.pass { "PASS" } else { "FAIL" }, o.name, o.detail);
    o
}

#[test]
fn acceptance() {
    let real = comparability_instances();
    let forced = forced_instances();
    let all: Vec<Instance> = real.into_iter().chain(forced).collect();
    let real: Vec<&Instance> = all.iter().filter(|i| !i.forced).collect();

    let outcomes = [
        report(criterion_1(&real)),
        report(criterion_2()),
        report(criterion_3(&real)),
        report(criterion_4(&all)),
        report(criterion_5(&real)),
        report(criterion_6(&all)),
        report(criterion_7()),
        report(criterion_8()),
        report(criterion_9()),
        report(criterion_10()),
        report(criterion_11(&all)),
    ];
    let failed: Vec<u32> = outcomes.iter().filter(|o| !o.pass).map(|o| o.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
