//! The verification tasks. Each returns tables and verdicts; errors are
//! reported per task and never abort the run.

use std::collections::BTreeMap;

use serde_json::json;

use qshuffle::bimodule::{coinvariants, degree2_mult_map, BasisStore};
use qshuffle::cartan::{height, kostant_partition_count, positive_roots, weyl_character, weyl_dim, Root};
use qshuffle::homology::{
    bar_complex, cohochschild_complex, gr_algebra, homology_ranks, koszul_complex, koszul_d, koszul_split_root_of_unity,
    wambst_homotopy, GrAlgebraSpec, KoszulComplex, KoszulElement,
};
use qshuffle::{CartanDatum, Content, Generic, QField, Regime, WeightSpec};

use crate::config::RunConfig;
use crate::report::{dims_table, incomplete, totals, TaskOutput, Verdict};

pub type TaskResult = Result<TaskOutput, String>;

pub fn run_task<F: QField>(name: &str, cfg: &RunConfig, store: &BasisStore<F>) -> TaskResult {
    match name {
        "serre-dims" => serre_dims(cfg, store),
        "coinvariants" => coinvariant_task(cfg, store),
        "cohochschild" => cohochschild(cfg, store),
        "bar-duality" => bar_duality(cfg, store),
        "koszul-generic" => koszul_generic(cfg),
        "koszul-root-of-unity" => koszul_root_of_unity::<F>(cfg),
        "homotopy-check" => homotopy_check::<F>(cfg),
        "theorem-a" => theorem_a(cfg, store),
        "theorem-b" => theorem_b(cfg, store),
        "prop-sln" => prop_sln(cfg, store),
        other => Err(format!("unknown task {other:?}")),
    }
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn lowest_height(datum: &CartanDatum, lambda: &WeightSpec) -> u32 {
    weyl_character(datum, lambda).keys().map(|g| height(g)).max().unwrap_or(0) as u32
}

/// Multiplicities of `L(lambda)` keyed like the contents of `M_k`, up to `t_max` simple letters.
fn character_by_key(datum: &CartanDatum, lambda: &WeightSpec, k: u32, t_max: u32) -> BTreeMap<String, u64> {
    weyl_character(datum, lambda)
        .into_iter()
        .filter(|(g, _)| height(g) <= t_max as i64)
        .map(|(g, m)| (Content::new(g.iter().map(|&x| x as u32).collect(), k).key(), m))
        .collect()
}

fn truncation_warning(out: &mut TaskOutput, what: &str, t_max: u32, needed: u32) {
    if t_max < needed {
        out.warnings.push(format!("t_max = {t_max} is below {needed}; {what} is truncated"));
    }
}

/// Partitions of `gamma` into positive roots, each used fewer than `cap` times.
fn restricted_partitions(roots: &[Root], gamma: &[i64], cap: Option<u32>) -> u64 {
    fn rec(roots: &[Root], i: usize, gamma: Vec<i64>, cap: Option<u32>) -> u64 {
        if gamma.iter().all(|&x| x == 0) {
            return 1;
        }
        if i == roots.len() {
            return 0;
        }
        let mut total = 0;
        let mut g = gamma;
        let mut used = 0;
        loop {
            total += rec(roots, i + 1, g.clone(), cap);
            used += 1;
            if cap.is_some_and(|c| used >= c) {
                break;
            }
            g = g.iter().zip(&roots[i]).map(|(a, b)| a - b).collect();
            if g.iter().any(|&x| x < 0) {
                break;
            }
        }
        total
    }
    rec(roots, 0, gamma.to_vec(), cap)
}

fn serre_dims<F: QField>(cfg: &RunConfig, store: &BasisStore<F>) -> TaskResult {
    let mut out = TaskOutput::default();
    let rank = cfg.datum.rank();
    let contents: Vec<Content> = Content::enumerate(rank, 0, 1, cfg.semantic.t_max);
    store.prefill(&contents);
    let roots = positive_roots(&cfg.datum).map_err(|e| e.to_string())?;
    let mut table = BTreeMap::new();
    let mut computed = BTreeMap::new();
    let mut oracle = BTreeMap::new();
    for c in &contents {
        let words = c.words().len();
        let dim = store.dim(c);
        let gamma: Vec<i64> = c.c.iter().map(|&x| x as i64).collect();
        let expect = match cfg.regime {
            Regime::Generic => kostant_partition_count(&cfg.datum, &gamma),
            Regime::RootOfUnity { l } => restricted_partitions(&roots, &gamma, Some(l)),
        };
        table.insert(c.key(), json!({ "words": words, "dim": dim, "serre_kernel": words - dim }));
        computed.insert(c.key(), dim as u64);
        oracle.insert(c.key(), expect);
    }
    out.tables.insert("components".into(), json!(table));
    let source = match cfg.regime {
        Regime::Generic => "Kostant partition count",
        Regime::RootOfUnity { .. } => "partitions into positive roots with multiplicities below l",
    };
    out.verdicts.push(Verdict::compare("graded dimensions of S(V)", computed, oracle, source));
    Ok(out)
}

fn coinvariant_task<F: QField>(cfg: &RunConfig, store: &BasisStore<F>) -> TaskResult {
    let mut out = TaskOutput::default();
    let t = cfg.semantic.t_max;
    truncation_warning(&mut out, "the character of L(lambda)", t, lowest_height(&cfg.datum, &cfg.lambda));
    let co = coinvariants(store, 1, t);
    let mut basis = BTreeMap::new();
    let mut dims = BTreeMap::new();
    for (c, elems) in &co.per_content {
        if elems.is_empty() {
            continue;
        }
        dims.insert(c.key(), elems.len() as u64);
        let vs: Vec<BTreeMap<String, String>> = elems
            .iter()
            .map(|x| x.iter().map(|(w, a)| (w.to_string(), a.to_string())).collect())
            .collect();
        basis.insert(c.key(), vs);
    }
    out.tables.insert("dims".into(), json!(dims));
    out.tables.insert("basis".into(), json!(basis));
    out.verdicts.push(Verdict::compare(
        "coinvariant dims per content",
        dims,
        character_by_key(&cfg.datum, &cfg.lambda, 1, t),
        "weyl_character(lambda)",
    ));
    out.verdicts.push(Verdict::compare(
        "total coinvariant dim",
        co.total_dim() as u64,
        weyl_dim(&cfg.datum, &cfg.lambda),
        "weyl_dim(lambda)",
    ));
    Ok(out)
}

fn cohochschild<F: QField>(cfg: &RunConfig, store: &BasisStore<F>) -> TaskResult {
    let mut out = TaskOutput::default();
    let n = cfg.semantic.n_max as usize;
    let cx = cohochschild_complex(store, 1, cfg.semantic.t_max, n);
    let sq = cx.verify_square_zero();
    out.verdicts.push(Verdict::compare("delta squares to zero", sq.is_ok(), true, "complex axiom"));
    if let Err(e) = sq {
        out.warnings.push(e);
    }
    let h = homology_ranks(&cx, n);
    out.tables.insert("homology".into(), dims_table(&h));
    out.tables.insert("totals".into(), json!(totals(&h, n)));
    out.incomplete = incomplete(&h);
    Ok(out)
}

fn bar_duality<F: QField>(cfg: &RunConfig, store: &BasisStore<F>) -> TaskResult {
    let mut out = TaskOutput::default();
    let (t, n) = (cfg.semantic.t_max, cfg.semantic.n_max as usize);
    let bar = bar_complex(store, 1, t, n);
    let sq = bar.verify_square_zero();
    out.verdicts.push(Verdict::compare("d squares to zero", sq.is_ok(), true, "complex axiom"));
    let hb = homology_ranks(&bar, n);
    let hc = homology_ranks(&cohochschild_complex(store, 1, t, n), n);
    let by_length = |k: &qshuffle::homology::ContentKey| k.0.f_length();
    let gb: BTreeMap<String, usize> = hb.grouped(by_length).into_iter().map(|((n, t), d)| (format!("{n},{t}"), d)).collect();
    let gc: BTreeMap<String, usize> = hc.grouped(by_length).into_iter().map(|((n, t), d)| (format!("{n},{t}"), d)).collect();
    out.tables.insert("bar".into(), dims_table(&hb));
    out.tables.insert("cohochschild".into(), dims_table(&hc));
    out.verdicts.push(Verdict::compare(
        "per-(n,content) dims agree",
        dims_table(&hb),
        dims_table(&hc),
        "coHochschild complex",
    ));
    out.verdicts.push(Verdict::compare("per-(n,length) dims agree", gb, gc, "coHochschild complex"));
    out.incomplete = incomplete(&hb);
    out.incomplete.extend(incomplete(&hc));
    Ok(out)
}

fn spec_for<F: QField>(cfg: &RunConfig, regime: Regime) -> Result<GrAlgebraSpec<F>, String> {
    gr_algebra(&cfg.roots, &cfg.lambda, regime).map_err(|e| e.to_string())
}

fn koszul_tables<F: QField>(out: &mut TaskOutput, name: &str, k: &KoszulComplex<F>) -> Vec<usize> {
    let n = k.spec.n();
    let h = homology_ranks(&k.complex, n);
    let t = totals(&h, n);
    out.tables.insert(format!("{name}_totals"), json!(t));
    t
}

fn koszul_generic(cfg: &RunConfig) -> TaskResult {
    let mut out = TaskOutput::default();
    let spec: GrAlgebraSpec<Generic> = spec_for(cfg, Regime::Generic)?;
    let k = koszul_complex(&spec, cfg.semantic.pbw_degree_max);
    let sq = k.complex.verify_square_zero();
    out.verdicts.push(Verdict::compare("d squares to zero", sq.is_ok(), true, "complex axiom"));
    let t = koszul_tables(&mut out, "homology", &k);
    let mut expect = vec![0; spec.n() + 1];
    expect[0] = spec.r;
    out.tables.insert("convex_order".into(), json!(spec.roots));
    out.verdicts.push(Verdict::compare("H_n totals", t, expect, "[dim L(lambda), 0, ..., 0]"));
    Ok(out)
}

fn koszul_root_of_unity<F: QField>(cfg: &RunConfig) -> TaskResult {
    let Regime::RootOfUnity { l } = cfg.regime else {
        return Err("koszul-root-of-unity needs a root_of_unity regime".into());
    };
    let mut out = TaskOutput::default();
    let spec: GrAlgebraSpec<F> = spec_for(cfg, cfg.regime)?;
    let n = spec.n();
    let pbw = cfg.semantic.pbw_degree_max;
    if pbw < l * n as u32 {
        out.warnings.push(format!(
            "pbw_degree_max = {pbw} is below l*N = {}; S-part degrees k with l*k > {pbw} are cut off",
            l * n as u32
        ));
    }
    let full = koszul_complex(&spec, pbw);
    let (s, r) = koszul_split_root_of_unity(&spec, pbw).map_err(|e| e.to_string())?;
    let sq = full.complex.verify_square_zero();
    out.verdicts.push(Verdict::compare("d squares to zero", sq.is_ok(), true, "complex axiom"));
    let s_zero = s.complex.blocks.values().all(|b| b.maps.iter().all(|m| m.is_zero()));
    out.verdicts.push(Verdict::compare("S-part differentials vanish", s_zero, true, "S-part construction"));
    let ts = koszul_tables(&mut out, "s_part", &s);
    let tr = koszul_tables(&mut out, "r_part", &r);
    let tf = koszul_tables(&mut out, "homology", &full);
    let expect: Vec<usize> = (0..=n)
        .map(|k| if l as usize * k <= pbw as usize { spec.r * binom(n, k) } else { 0 })
        .collect();
    out.verdicts.push(Verdict::compare("S-part H_k totals", ts, expect.clone(), "r * binomial(N, k)"));
    out.verdicts.push(Verdict::compare("R-part is acyclic", tr, vec![0; n + 1], "zero"));
    out.verdicts.push(Verdict::compare("H_k totals", tf, expect, "r * binomial(N, k)"));
    Ok(out)
}

/// `(hd + dh)(x) == x`.
fn homotopy_holds<F: QField>(spec: &GrAlgebraSpec<F>, x: &KoszulElement<F>) -> Result<bool, String> {
    let mut sum = koszul_d(spec, &wambst_homotopy(spec, x).map_err(|e| e.to_string())?);
    let dx = koszul_d(spec, x);
    if !dx.is_empty() {
        for (m, c) in wambst_homotopy(spec, &dx).map_err(|e| e.to_string())? {
            let e = sum.entry(m).or_insert_with(F::zero);
            *e = e.clone() + c;
        }
    }
    sum.retain(|_, c| !c.is_zero());
    Ok(&sum == x)
}

fn homotopy_check<F: QField>(cfg: &RunConfig) -> TaskResult {
    let mut out = TaskOutput::default();
    let pbw = cfg.semantic.pbw_degree_max;
    let (checked, failures) = match cfg.regime {
        Regime::Generic => {
            let spec: GrAlgebraSpec<Generic> = spec_for(cfg, Regime::Generic)?;
            let mut k = koszul_complex(&spec, pbw);
            k.monomials.retain(|key, _| key.gamma.iter().any(|g| *g > 0));
            exhaustive(&k)?
        }
        Regime::RootOfUnity { .. } => {
            let spec: GrAlgebraSpec<F> = spec_for(cfg, cfg.regime)?;
            let (_, r) = koszul_split_root_of_unity(&spec, pbw).map_err(|e| e.to_string())?;
            exhaustive(&r)?
        }
    };
    out.tables.insert("monomials_checked".into(), json!(checked));
    out.verdicts.push(Verdict::compare("hd + dh = 1 failures", failures, Vec::<String>::new(), "identity"));
    Ok(out)
}

fn exhaustive<F: QField>(k: &KoszulComplex<F>) -> Result<(usize, Vec<String>), String> {
    let mut checked = 0;
    let mut failures = Vec::new();
    for block in k.monomials.values() {
        for terms in &block.terms {
            for m in terms {
                let x: KoszulElement<F> = [(m.clone(), F::one())].into_iter().collect();
                checked += 1;
                if !homotopy_holds(&k.spec, &x)? {
                    failures.push(m.to_string());
                }
            }
        }
    }
    Ok((checked, failures))
}

fn theorem_a<F: QField>(cfg: &RunConfig, store: &BasisStore<F>) -> TaskResult {
    let mut out = TaskOutput::default();
    let (t, n) = (cfg.semantic.t_max, cfg.semantic.n_max as usize);
    truncation_warning(&mut out, "the character of L(lambda)", t, lowest_height(&cfg.datum, &cfg.lambda));
    let h = homology_ranks(&cohochschild_complex(store, 1, t, n), n);
    out.tables.insert("homology".into(), dims_table(&h));
    out.incomplete = incomplete(&h);
    let degree0: BTreeMap<String, u64> = h
        .dims
        .iter()
        .filter(|((m, _), d)| *m == 0 && **d > 0)
        .map(|((_, k), d)| (k.to_string(), *d as u64))
        .collect();
    out.verdicts.push(Verdict::compare(
        "Hoch^0 per content",
        degree0,
        character_by_key(&cfg.datum, &cfg.lambda, 1, t),
        "weyl_character(lambda)",
    ));
    let big_n = cfg.roots.len();
    let (higher_oracle, source): (Vec<usize>, &str) = match cfg.regime {
        Regime::Generic => (vec![0; n], "zero"),
        Regime::RootOfUnity { .. } => ((1..=n).map(|k| binom(big_n, k)).collect(), "dim wedge^n(n_-) = binomial(N, n)"),
    };
    let higher: Vec<usize> = (1..=n).map(|k| h.total(k)).collect();
    out.verdicts.push(Verdict::compare("Hoch^n totals for n >= 1", higher, higher_oracle, source));
    Ok(out)
}

fn theorem_b<F: QField>(cfg: &RunConfig, store: &BasisStore<F>) -> TaskResult {
    let mut out = TaskOutput::default();
    let t = cfg.semantic.t_max;
    let n = cfg.semantic.n_max.min(1) as usize;
    let d = &cfg.datum;
    let lam = cfg.lambda.coweights();
    let mut critical = Vec::new();
    let mut quotient = 0;
    for j in 0..d.rank() {
        if lam[j] == 1 {
            let shifted: Vec<i64> = (0..d.rank()).map(|i| 2 * lam[i] - d.a(i, j)).collect();
            let w = WeightSpec::new(d, shifted).map_err(|e| e.to_string())?;
            quotient += weyl_dim(d, &w) as usize;
            critical.push(j + 1);
        }
    }
    let dim = weyl_dim(d, &cfg.lambda) as usize;
    let expect0 = dim * dim - quotient;
    truncation_warning(&mut out, "L(lambda) (x) L(lambda)", t, 2 * lowest_height(d, &cfg.lambda));
    let h = homology_ranks(&cohochschild_complex(store, 2, t, n), n);
    out.tables.insert("homology".into(), dims_table(&h));
    out.tables.insert("critical_indices".into(), json!(critical));
    out.incomplete = incomplete(&h);
    out.verdicts.push(Verdict::compare(
        "Hoch^0(M_2) total",
        h.total(0),
        expect0,
        "dim L(lambda)^2 - sum over critical j of weyl_dim(2 lambda - alpha_j)",
    ));
    if n >= 1 {
        out.verdicts.push(Verdict::compare("Hoch^1(M_2) total", h.total(1), 0, "zero"));
    }
    let m = degree2_mult_map(store, t);
    if let Some(w) = &m.truncation_warning {
        out.warnings.push(w.clone());
    }
    out.tables.insert(
        "multiplication".into(),
        json!({ "domain": m.domain_dim(), "image": m.image_dim(), "kernel": m.kernel_dim(), "target": m.target_dim() }),
    );
    out.verdicts.push(Verdict::compare("multiplication kernel dim", m.kernel_dim(), quotient, "sum of weyl_dim(2 lambda - alpha_j)"));
    out.verdicts.push(Verdict::compare("multiplication onto Hoch^0(M_2)", m.surjective(), true, "surjectivity"));
    Ok(out)
}

fn prop_sln<F: QField>(cfg: &RunConfig, store: &BasisStore<F>) -> TaskResult {
    let d = &cfg.datum;
    let r = d.rank();
    if *d != CartanDatum::sl(r + 1) {
        return Err("prop-sln needs a type A Cartan matrix".into());
    }
    let mut last = vec![0; r];
    last[r - 1] = 1;
    if cfg.lambda.coweights() != last.as_slice() {
        return Err(format!("prop-sln needs lambda = {last:?} (the last fundamental weight)"));
    }
    let mut out = TaskOutput::default();
    let t = cfg.semantic.t_max;
    let mut computed = BTreeMap::new();
    let mut oracle = BTreeMap::new();
    let mut per_content = BTreeMap::new();
    for p in 0..=cfg.semantic.p_max {
        let w = cfg.lambda.scaled(p as i64);
        truncation_warning(&mut out, &format!("the character of L({p} lambda)"), t, lowest_height(d, &w));
        let co = coinvariants(store, p, t);
        computed.insert(p.to_string(), co.total_dim() as u64);
        oracle.insert(p.to_string(), weyl_dim(d, &w));
        let dims: BTreeMap<String, u64> =
            co.dims().into_iter().filter(|(_, n)| *n > 0).map(|(c, n)| (c.key(), n as u64)).collect();
        out.verdicts.push(Verdict::compare(
            &format!("coinvariants of M_{p} per content"),
            dims.clone(),
            character_by_key(d, &w, p, t),
            "weyl_character(p lambda)",
        ));
        per_content.insert(p.to_string(), dims);
    }
    out.tables.insert("dims".into(), json!(per_content));
    out.verdicts.push(Verdict::compare("total dims by p", computed, oracle, "weyl_dim(p lambda)"));
    Ok(out)
}
