use std::error::Error as StdError;
use std::fs;
use std::path::Path;

use ultralip::extremal::{assertion_window, build_extreme, perturbation_bound};
use ultralip::format::{parse_any, write_dendrogram, write_space};
use ultralip::hierarchy::PartitionChain;
use ultralip::lipschitz::{free_norm_lp, free_norm_tree, norm, norm_attainment, FreeElement, LipFn};
use ultralip::mideal::{
    random_flat, three_ball_check, three_ball_ultrametric_demo, werner_audit, Projection, SubspaceSpec,
    ThreeBallInstance,
};
use ultralip::random::{default_heights, gen_space, random_ball_fn, rng, RandomSpaceSpec};
use ultralip::rational::{parse_rational, pow, Rational};
use ultralip::retraction::{y_witness, Enumeration, RetractionFamily};
use ultralip::suite::run_suite;
use ultralip::witnesses::{
    ball_chain_search, cauchy_gap_check, m_embed_witness, nonduality_audit, not_proper_sequence, pseudo_cauchy_search,
    BallChain, Molecular,
};
use ultralip::{builtin, FiniteUltraSpace, PresentedSpace};

use crate::output::{digest, r, Format, Output, Table};
use crate::{Cli, Command, Engine, GenFormat, MidealCommand};

type CmdResult<T> = Result<T, Box<dyn StdError>>;

fn rational(s: &str) -> CmdResult<Rational> {
    Ok(parse_rational(s)?)
}

fn load(path: &Path) -> CmdResult<(FiniteUltraSpace, String)> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let space = parse_any(&text)?;
    Ok((space, digest(&text)))
}

fn items(s: &str) -> impl Iterator<Item = &str> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty())
}

fn point(space: &FiniteUltraSpace, label: &str) -> CmdResult<usize> {
    Ok(space.lookup(label)?)
}

/// `label:coeff,...` as an element.
fn parse_element(space: &FiniteUltraSpace, s: &str) -> CmdResult<FreeElement> {
    let mut coeffs = Vec::new();
    for it in items(s) {
        let (l, c) = it.split_once(':').ok_or_else(|| format!("expected label:coeff, got {it:?}"))?;
        coeffs.push((point(space, l.trim())?, rational(c)?));
    }
    Ok(FreeElement::from_coeffs(space.len(), coeffs)?)
}

/// `label=value,...` as a function, zero elsewhere.
fn parse_function(space: &FiniteUltraSpace, s: &str) -> CmdResult<LipFn> {
    let mut v = vec![Rational::from_integer(0.into()); space.len()];
    for it in items(s) {
        let (l, c) = it.split_once('=').ok_or_else(|| format!("expected label=value, got {it:?}"))?;
        v[point(space, l.trim())?] = rational(c)?;
    }
    Ok(LipFn::new(v)?)
}

fn labels_of(space: &FiniteUltraSpace, pts: &[usize]) -> String {
    pts.iter().map(|&x| space.label(x)).collect::<Vec<_>>().join(",")
}

fn pair_label(space: &FiniteUltraSpace, p: Option<(usize, usize)>) -> String {
    p.map_or("-".into(), |(x, y)| format!("({},{})", space.label(x), space.label(y)))
}

fn values_table(space: &FiniteUltraSpace, name: &str, fs: &[(&str, &LipFn)]) -> Table {
    let mut cols = vec!["point"];
    cols.extend(fs.iter().map(|(n, _)| *n));
    let mut t = Table::new(name, &cols);
    for x in 0..space.len() {
        let mut row = vec![space.label(x).to_string()];
        row.extend(fs.iter().map(|(_, f)| r(f.value(x))));
        t.row(row);
    }
    t
}

fn presented(name: &str) -> CmdResult<PresentedSpace> {
    Ok(builtin(name)?)
}

pub fn run(cli: &Cli) -> CmdResult<(String, bool)> {
    let format = cli.format;
    let out = match &cli.command {
        Command::Validate { file } => validate(file)?,
        Command::Partition { file, q, level, trail } => partition(file, q, *level, trail.as_deref())?,
        Command::Ywitness { file, order, function, eps } => ywitness(file, order.as_deref(), function, eps)?,
        Command::Freenorm { file, element, engine } => freenorm(file, element, *engine)?,
        Command::Extreme { file, q, eps } => extreme(file, q, eps.as_deref())?,
        Command::Mideal { which: MidealCommand::Werner { grid } } => werner(*grid)?,
        Command::Mideal { which: MidealCommand::Demo { file, q, n, r, eps } } => demo(file, q, *n, r, eps, cli.seed)?,
        Command::Spherical { builtin, chain_depth, min_alpha } => {
            spherical(builtin, cli.depth.unwrap_or(1000), *chain_depth, min_alpha)?
        }
        Command::Audit { builtin, phi, molecules, chain } => {
            audit(builtin, cli.depth.unwrap_or(30), phi.as_deref(), molecules.as_deref(), chain.as_deref())?
        }
        Command::Membed { builtin, yscale, min_len } => membed(builtin, cli.depth.unwrap_or(12), *yscale, *min_len)?,
        Command::Gen { points, branching, heights, output, out } => {
            return gen(cli.seed, *points, *branching, heights.as_deref(), *output, out.as_deref())
        }
        Command::Suite { name } => {
            let rep = run_suite(name, cli.seed)?;
            let text = match format {
                Format::Tsv => rep.to_tsv(),
                Format::Text => rep.to_text(),
            };
            return Ok((text, rep.pass()));
        }
    };
    Ok((out.render(format), out.pass()))
}

fn validate(file: &Path) -> CmdResult<Output> {
    let (s, dig) = load(file)?;
    let mut o = Output::new("validate");
    o.param("file", file.display()).param("digest", dig);
    let mut t = Table::new("space", &["property", "value"]);
    t.row(vec!["points".into(), s.len().to_string()]);
    t.row(vec!["labels".into(), s.labels().join(",")]);
    t.row(vec!["is_ultrametric".into(), s.is_ultrametric().to_string()]);
    t.row(vec![
        "witness".into(),
        s.ultrametric_witness().map_or("-".into(), |(i, j, k)| labels_of(&s, &[i, j, k])),
    ]);
    t.row(vec!["diameter".into(), r(&s.diameter())]);
    t.row(vec!["min_distance".into(), s.min_positive_distance().map_or("-".into(), |d| r(&d))]);
    o.tables.push(t);
    o.check("metric", true, "matrix passes the metric axioms");
    Ok(o)
}

fn partition(file: &Path, q: &str, level: Option<i64>, trail: Option<&str>) -> CmdResult<Output> {
    let (s, dig) = load(file)?;
    let q = rational(q)?;
    let chain = PartitionChain::build(&s, &q)?;
    let mut o = Output::new("partition");
    o.param("file", file.display()).param("digest", dig).param("q", r(&q));
    let mut t = Table::new("levels", &["n", "radius", "centers"]);
    let levels: Vec<i64> = match level {
        Some(n) => vec![n],
        None => (chain.n_lo()..=chain.n_hi()).collect(),
    };
    for n in levels {
        t.row(vec![n.to_string(), r(&chain.radius(n)), labels_of(&s, chain.centers(n))]);
    }
    o.tables.push(t);
    if let Some(l) = trail {
        let x = point(&s, l)?;
        let tr = chain.trail(x);
        let d = tr.distances(&s);
        let mut t = Table::new("trail", &["k", "level", "point", "distance"]);
        for (k, p) in tr.points.iter().enumerate() {
            t.row(vec![k.to_string(), tr.level(k).to_string(), s.label(*p).into(), r(&d[k])]);
        }
        o.tables.push(t);
    }
    Ok(o)
}

fn ywitness(file: &Path, order: Option<&str>, function: &str, eps: &str) -> CmdResult<Output> {
    let (s, dig) = load(file)?;
    let e = match order {
        Some(o) => Enumeration::from_labels(&s, &items(o).collect::<Vec<_>>())?,
        None => Enumeration::natural(&s),
    };
    let order_labels = labels_of(&s, e.order());
    let fam = RetractionFamily::new(e);
    let f = parse_function(&s, function)?;
    let eps = rational(eps)?;
    let w = y_witness(&fam, &f, &eps)?;
    let mut o = Output::new("ywitness");
    o.param("file", file.display()).param("digest", dig).param("order", order_labels).param("eps", r(&eps));
    let mut t = Table::new("witness", &["N", "N_max", "blocking_pair", "blocking_slope"]);
    let slope = w.blocking.map_or("-".into(), |(x, y)| r(&ultralip::lipschitz::slope(&s, &f, x, y)));
    t.row(vec![w.n.to_string(), fam.n_max().to_string(), pair_label(&s, w.blocking), slope]);
    o.tables.push(t);
    Ok(o)
}

fn freenorm(file: &Path, element: &str, engine: Engine) -> CmdResult<Output> {
    let (s, dig) = load(file)?;
    let mu = parse_element(&s, element)?;
    let mut o = Output::new("freenorm");
    o.param("file", file.display()).param("digest", dig).param("engine", format!("{engine:?}").to_lowercase());
    let mut t = Table::new("norm", &["engine", "value"]);
    let lp = if engine != Engine::Tree { Some(free_norm_lp(&s, &mu)?) } else { None };
    let tree = if engine != Engine::Lp { Some(free_norm_tree(&s, &mu)?) } else { None };
    if let Some((v, _)) = &lp {
        t.row(vec!["lp".into(), r(v)]);
    }
    if let Some(v) = &tree {
        t.row(vec!["tree".into(), r(v)]);
    }
    o.tables.push(t);
    if let Some((v, cert)) = &lp {
        o.tables.push(values_table(&s, "certificate", &[("f", &cert.f)]));
        o.check("certificate", cert.verify(&s, &mu), format!("‖f‖ <= 1 and f(mu) = {}", r(v)));
    }
    if let (Some((a, _)), Some(b)) = (&lp, &tree) {
        o.check("lp=tree", a == b, format!("{} vs {}", r(a), r(b)));
    }
    Ok(o)
}

fn extreme(file: &Path, q: &str, eps: Option<&str>) -> CmdResult<Output> {
    let (s, dig) = load(file)?;
    let q = rational(q)?;
    let chain = PartitionChain::build(&s, &q)?;
    let c = build_extreme(&chain)?;
    let epss: Vec<Rational> = match eps {
        Some(e) => items(e).map(rational).collect::<CmdResult<_>>()?,
        None => ["0", "1/10", "1/100", "1/1000"].iter().map(|e| rational(e)).collect::<CmdResult<_>>()?,
    };
    let mut o = Output::new("extreme");
    o.param("file", file.display()).param("digest", dig).param("q", r(&q));
    let dist = LipFn::distance_to_base(&s);
    o.tables.push(values_table(&s, "function", &[("f", &c.f), ("d(base,x)", &dist)]));
    let fnorm = norm(&s, &c.f);
    let (x, y) = norm_attainment(&s, &c.f)?;
    let mut t = Table::new("norm", &["norm", "attained_at"]);
    t.row(vec![r(&fnorm), pair_label(&s, Some((x, y)))]);
    o.tables.push(t);
    o.check("norm-one", fnorm == Rational::from_integer(1.into()), format!("‖f‖ = {}", r(&fnorm)));
    let window = assertion_window(&q);
    let mut t = Table::new("perturbation", &["eps", "max_g_norm", "argmax", "bound", "in_window", "holds"]);
    for e in &epss {
        let rep = perturbation_bound(&c, e)?;
        t.row(vec![
            r(e),
            r(&rep.max_g_norm),
            pair_label(&s, rep.argmax),
            r(&rep.bound),
            rep.in_window.to_string(),
            rep.holds.to_string(),
        ]);
        if *e <= window {
            o.check(&format!("bound/eps={}", r(e)), rep.holds, format!("{} <= {}", r(&rep.max_g_norm), r(&rep.bound)));
        }
    }
    o.tables.push(t);
    Ok(o)
}

fn werner(grid: u32) -> CmdResult<Output> {
    let a = werner_audit(grid)?;
    let s = &a.space;
    let mut o = Output::new("mideal werner");
    o.param("grid", grid);
    let q = Projection::evaluation_at(s.len(), s.len() - 1);
    let qf = q.apply(&a.f);
    let res = a.f.minus(&qf);
    o.tables.push(values_table(s, "functions", &[("F", &a.f), ("QF", &qf), ("F-QF", &res)]));
    let mut t = Table::new("norms", &["‖F‖", "‖QF‖", "‖F-QF‖", "attained_at"]);
    t.row(vec![r(&a.norm), r(&a.q_norm), r(&a.residual_norm), pair_label(s, Some(a.residual_pair))]);
    o.tables.push(t);
    let spec = SubspaceSpec::from_projection(s, q)?;
    let z = LipFn::zero(s.len());
    let eps = rational("1/100")?;
    let tb = three_ball_check(&spec, &ThreeBallInstance { zs: [z.clone(), z.clone(), z], x: a.f.clone(), eps })?;
    let mut t = Table::new("three-ball", &["z_i", "x", "achieved"]);
    t.row(vec!["0".into(), "F".into(), r(&tb.achieved)]);
    o.tables.push(t);
    o.check("reproduced", a.reproduced, format!("‖F‖ = {} < {} = ‖F-QF‖", r(&a.norm), r(&a.residual_norm)));
    Ok(o)
}

fn demo(file: &Path, q: &str, n: i64, big_r: &str, eps: &str, seed: u64) -> CmdResult<Output> {
    let (s, dig) = load(file)?;
    let q = rational(q)?;
    let big_r = rational(big_r)?;
    let eps = rational(eps)?;
    let chain = PartitionChain::build(&s, &q)?;
    let delta = pow(&q, n);
    let mut g = rng(seed);
    let f = random_ball_fn(&mut g, &s);
    let flats = [0, 1, 2].map(|_| random_flat(&mut g, &s, &delta, &big_r, &eps));
    let rep = three_ball_ultrametric_demo(&chain, &f, &flats, n, &big_r, &eps)?;
    let mut o = Output::new("mideal demo");
    o.param("file", file.display())
        .param("digest", dig)
        .param("q", r(&q))
        .param("N", n)
        .param("R", r(&big_r))
        .param("eps", r(&eps))
        .param("seed", seed);
    o.tables.push(values_table(
        &s,
        "functions",
        &[("F", &f), ("h", &rep.hb.h), ("f1", &flats[0]), ("f2", &flats[1]), ("f3", &flats[2])],
    ));
    let mut t = Table::new("cases", &["case", "pairs", "worst", "argmax", "bound"]);
    for c in &rep.cases {
        t.row(vec![c.case.name().into(), c.pairs.to_string(), r(&c.worst), pair_label(&s, c.argmax), r(&c.bound)]);
    }
    o.tables.push(t);
    let mut t = Table::new("summary", &["i", "profile", "‖f_i+F-h‖"]);
    for (i, (p, nm)) in rep.profiles.iter().zip(&rep.norms).enumerate() {
        t.row(vec![(i + 1).to_string(), r(p), r(nm)]);
    }
    o.tables.push(t);
    o.check("deviation", rep.deviation_ok, format!("max |F-h| = {} <= q^2N/2", r(&rep.hb.max_deviation)));
    o.check("cases", rep.cases_ok, "every pair within its case bound");
    o.check("worst", rep.worst <= rep.bound, format!("{} <= {}", r(&rep.worst), r(&rep.bound)));
    Ok(o)
}

fn spherical(name: &str, depth: usize, chain_depth: usize, min_alpha: &str) -> CmdResult<Output> {
    let p = presented(name)?;
    let min_alpha = rational(min_alpha)?;
    let pc = pseudo_cauchy_search(&p, depth)?;
    let mut o = Output::new("spherical");
    o.param("builtin", name).param("depth", depth).param("chain_depth", chain_depth).param("min_alpha", r(&min_alpha));
    let truth = p.truth();
    let mut t = Table::new("ground-truth", &["spherically_complete", "proper", "totally_bounded"]);
    let show = |b: Option<bool>| b.map_or("?".into(), |b| b.to_string());
    t.row(vec![show(truth.spherically_complete), show(truth.proper), show(truth.totally_bounded)]);
    o.tables.push(t);
    let mut t = Table::new("pseudo-cauchy", &["k", "point", "gap_to_next"]);
    for (k, &x) in pc.indices.iter().enumerate() {
        t.row(vec![(k + 1).to_string(), p.label(x), pc.gaps.get(k).map_or("-".into(), r)]);
    }
    o.tables.push(t);
    let mut t = Table::new("pseudo-limits", &["point"]);
    for &x in &pc.pseudo_limits {
        t.row(vec![p.label(x)]);
    }
    o.tables.push(t);
    if pc.indices.len() >= 2 {
        let g = cauchy_gap_check(&p, &pc.indices)?;
        let mut t = Table::new("gaps", &["count", "min", "limit_estimate", "bounded_below"]);
        let min = g.gaps.iter().min().expect("nonempty");
        t.row(vec![g.gaps.len().to_string(), r(min), r(&g.limit_estimate), g.bounded_below.to_string()]);
        o.tables.push(t);
    }
    let mut t = Table::new("ball-chain", &["k", "center", "radius"]);
    match ball_chain_search(&p, chain_depth, &min_alpha)? {
        Some(bc) => {
            for (k, (c, rad)) in bc.chain.centers.iter().zip(&bc.chain.radii).enumerate() {
                t.row(vec![(k + 1).to_string(), p.label(*c), r(rad)]);
            }
        }
        None => t.row(vec!["-".into(), "none".into(), "-".into()]),
    }
    o.tables.push(t);
    Ok(o)
}

fn parse_molecules(s: &FiniteUltraSpace, text: &str) -> CmdResult<Molecular> {
    let mut terms = Vec::new();
    for it in items(text) {
        let (l, pq) = it.split_once(':').ok_or_else(|| format!("expected lambda:p>q, got {it:?}"))?;
        let (a, b) = pq.split_once('>').ok_or_else(|| format!("expected p>q, got {pq:?}"))?;
        terms.push((rational(l)?, point(s, a.trim())?, point(s, b.trim())?));
    }
    Ok(Molecular { terms })
}

fn parse_chain(s: &FiniteUltraSpace, text: &str) -> CmdResult<BallChain> {
    let (mut centers, mut radii) = (Vec::new(), Vec::new());
    for it in items(text) {
        let (c, rad) = it.split_once('@').ok_or_else(|| format!("expected center@radius, got {it:?}"))?;
        centers.push(point(s, c.trim())?);
        radii.push(rational(rad)?);
    }
    Ok(BallChain { centers, radii })
}

fn audit(name: &str, depth: usize, phi: Option<&str>, molecules: Option<&str>, chain: Option<&str>) -> CmdResult<Output> {
    let p = presented(name)?;
    let s = p.truncate(p.available(depth))?;
    let phi = match (phi, molecules) {
        (Some(_), Some(_)) => return Err("give either --phi or --molecules".into()),
        (Some(e), None) => Molecular::from_element(&s, &parse_element(&s, e)?),
        (None, Some(m)) => parse_molecules(&s, m)?,
        (None, None) => Molecular { terms: Vec::new() },
    };
    let chain = match chain {
        Some(c) => parse_chain(&s, c)?,
        None => {
            let one = Rational::from_integer(1.into());
            ball_chain_search(&p, depth, &one)?.ok_or("no nested ball chain on this truncation")?.chain
        }
    };
    let a = nonduality_audit(&s, &chain, &phi)?;
    let mut o = Output::new("audit");
    o.param("builtin", name).param("depth", s.len());
    let mut t = Table::new("phi", &["lambda", "p", "q"]);
    for (l, x, y) in &a.phi.terms {
        t.row(vec![r(l), s.label(*x).into(), s.label(*y).into()]);
    }
    o.tables.push(t);
    let mut t = Table::new(
        "levels",
        &["n", "center", "radius", "|A_n|", "beta", "in_K", "dist", "hyp", "f_pair", "f_formula", "g_pair", "g_formula", "‖f_n‖", "‖g_n‖"],
    );
    for (lv, c) in a.levels.iter().zip(&a.chain.centers) {
        t.row(vec![
            lv.n.to_string(),
            s.label(*c).into(),
            r(&lv.radius),
            lv.annulus.len().to_string(),
            r(&lv.beta),
            lv.in_k.to_string(),
            r(&lv.distance),
            lv.hypothesis.to_string(),
            r(&lv.f_pairing),
            r(&lv.f_formula),
            r(&lv.g_pairing),
            r(&lv.g_formula),
            r(&lv.f_norm),
            r(&lv.g_norm),
        ]);
    }
    o.tables.push(t);
    let mut t = Table::new("summary", &["alpha", "sum_|beta|", "claim2_bound", "sum_K_beta", "sum_K_r_beta", "verdict"]);
    t.row(vec![
        r(&a.alpha),
        r(&a.beta_abs_sum),
        r(&a.claim_two_bound),
        r(&a.beta_k_sum),
        r(&a.weighted_k_sum),
        a.verdict().into(),
    ]);
    o.tables.push(t);
    o.check("claim1", a.claim_one, "cross-annulus distances at least the next radius");
    o.check("claim2", a.claim_two, format!("{} <= {}", r(&a.beta_abs_sum), r(&a.claim_two_bound)));
    o.check("functions", a.functions_ok, "‖f_n‖, ‖g_n‖ <= 1");
    o.check("pairings", a.formulas_ok, "pairings match their closed forms");
    Ok(o)
}

fn membed(name: &str, depth: usize, yscale: usize, min_len: usize) -> CmdResult<Output> {
    let p = presented(name)?;
    let mut o = Output::new("membed");
    o.param("builtin", name).param("depth", depth).param("yscale", yscale).param("min_len", min_len);
    let Some(w) = not_proper_sequence(&p, depth, min_len)? else {
        let mut t = Table::new("witness", &["result"]);
        t.row(vec!["no subsequence found on the truncation".into()]);
        o.tables.push(t);
        return Ok(o);
    };
    let s = p.truncate(p.available(depth))?;
    let fam = RetractionFamily::new(Enumeration::natural(&s));
    let rep = m_embed_witness(&fam, &w, yscale)?;
    let mut t = Table::new("witness", &["N", "delta", "R", "subsequence"]);
    let sub: Vec<String> = w.subsequence.iter().map(|i| i.to_string()).collect();
    t.row(vec![w.n.to_string(), r(&w.delta), r(&w.r), sub.join(",")]);
    o.tables.push(t);
    let mut cols: Vec<(String, &LipFn)> = vec![("F".into(), &rep.big_f), ("g".into(), &rep.g)];
    cols.push(("f_1".into(), &rep.fs[0]));
    let named: Vec<(&str, &LipFn)> = cols.iter().map(|(n, f)| (n.as_str(), *f)).collect();
    o.tables.push(values_table(&s, "functions", &named));
    let mut t = Table::new("min-max", &["optimum", "optimum-1", "delta/(3R)"]);
    t.row(vec![r(&rep.optimum), r(&(&rep.optimum - Rational::from_integer(1.into()))), r(&rep.bound)]);
    o.tables.push(t);
    let one = Rational::from_integer(1.into());
    o.check("f_i", rep.f_norms.iter().all(|n| *n == one), "every ‖f_i‖ = 1");
    o.check("F", rep.big_f_norm <= one && rep.big_f_values_ok, format!("‖F‖ = {}", r(&rep.big_f_norm)));
    o.check("gap", rep.pass, format!("{} >= {}", r(&(&rep.optimum - &one)), r(&rep.bound)));
    Ok(o)
}

fn gen(
    seed: u64,
    points: usize,
    branching: usize,
    heights: Option<&str>,
    output: GenFormat,
    out: Option<&Path>,
) -> CmdResult<(String, bool)> {
    if points == 0 {
        return Err("--points must be at least 1".into());
    }
    let mut hs = match heights {
        Some(h) => items(h).map(rational).collect::<CmdResult<Vec<_>>>()?,
        None => default_heights(),
    };
    hs.sort();
    hs.dedup();
    if hs.is_empty() || hs[0] <= Rational::from_integer(0.into()) {
        return Err("heights must be positive".into());
    }
    let spec = RandomSpaceSpec { seed, points, heights: hs, branching: branching.max(2) };
    let d = gen_space(&spec);
    let text = match output {
        GenFormat::Dend => write_dendrogram(&d),
        GenFormat::Space => write_space(&d.to_space()?),
    };
    match out {
        Some(path) => {
            fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display()))?;
            Ok((format!("wrote {} ({} points, seed {seed})\n", path.display(), points), true))
        }
        None => Ok((text, true)),
    }
}
