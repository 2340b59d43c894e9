//! End-to-end acceptance run: one PASS/FAIL line per criterion.

mod common;

use std::collections::HashMap;
use std::process::Command;
use std::time::{Duration, Instant};

use common::{all_free_network, det_q, fixture, fixture_path, parse_ideal, random_ideal_src, strings};
use netalg::groebner::{groebner_basis, ideal_dimension};
use netalg::identifiability::*;
use netalg::informativity::*;
use netalg::netmodel::*;
use netalg::oracle::{brute_force_dimension, rank_rational};
use netalg::polyalg::{MonomialOrder, OrderKind, Rational};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(t: Instant, limit: Duration) -> Result<String, String> {
    let e = t.elapsed();
    ensure(e <= limit, format!("took {e:.2?}, limit {limit:?}"))?;
    Ok(format!("{e:.2?}"))
}

fn q(a: i64, b: i64) -> Rational {
    Rational::new(BigInt::from(a), BigInt::from(b))
}

fn e<E: std::fmt::Debug>(x: E) -> String {
    format!("{x:?}")
}

fn c1() -> Check {
    let t = Instant::now();
    let s = fixture("example1.net");
    let m = assemble_informativity_m(&s, &[], &[]).map_err(e)?;
    let r = informativity_of_m(&m, s.assumptions.input_spectrum_positive_definite, &InformativityOptions::default()).map_err(e)?;
    let g = r.graph.as_ref().ok_or("no graph result")?;
    ensure(g.count == 3, format!("graph count {}", g.count))?;
    ensure(FlowGraph::from_m(&m).is_valid_witness(&g.paths), "invalid witness")?;
    let gb = r.groebner.as_ref().ok_or("no groebner result")?;
    ensure(
        (gb.generic_rank, gb.k, gb.case) == (3, 3, Some(RankVerdict::AlwaysAtLeastK)),
        format!("groebner {} at k {} {:?}", gb.generic_rank, gb.k, gb.case),
    )?;
    let nu = r.numeric.as_ref().ok_or("no numeric result")?.rank;
    ensure(nu == 3, format!("numeric {nu}"))?;
    let time = within(t, Duration::from_secs(10))?;
    // det Pi against 1 / (1 - G1 G2) at random points, H1 = H2 = 1.
    let pi = pi_of(&m).map_err(e)?;
    let names: Vec<String> = pi.entries()[0].ring().names().to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..5 {
        let pt: Vec<Rational> = names.iter().map(|_| q(rng.gen_range(1..99), rng.gen_range(1..99))).collect();
        let at = |v: &str| names.iter().position(|x| x == v).map(|i| pt[i].clone()).ok_or(format!("{v} missing"));
        let want = q(1, 1) / (q(1, 1) - at("G1")? * at("G2")?);
        let Some(pv) = pi.eval(&pt) else { continue };
        ensure(det_q(pv) == want, "det Pi is not 1/(1 - G1*G2)")?;
    }
    Ok(format!("paths 3, groebner 3 AlwaysAtLeastK, numeric 3, det Pi = 1/(1 - G1*G2) ({time})"))
}

fn c2() -> Check {
    let t = Instant::now();
    let s = fixture("example1.net");
    let a = s.identification.a_nodes.clone().unwrap_or_else(|| strings(&["w1", "w2"]));
    let (r, _) = network_identifiability(&s, Some(&a), &SubnetMode::MeasureBNodes, &IdentifiabilityOptions::default()).map_err(e)?;
    ensure(
        (r.dim_vo, r.dim_vc, r.fiber_dim) == (2, 2, 0) && r.verdict == IdentVerdict::GenericallyLocallyIdentifiable,
        format!("dims {}/{} fiber {}", r.dim_vo, r.dim_vc, r.fiber_dim),
    )?;
    let time = within(t, Duration::from_secs(10))?;
    Ok(format!("dim V_o 2, dim V_c 2, fiber 0 ({time})"))
}

fn c3() -> Check {
    let s = fixture("example3.net");
    let r = identifiability_verdict(&s, &IdentifiabilityOptions::default()).map_err(e)?;
    ensure((r.dim_vo, r.dim_vc) == (2, 2), format!("dims {}/{}", r.dim_vo, r.dim_vc))?;
    let map = build_f(&s).map_err(e)?;
    let ii = build_identifiability_ideal(&map, &s.knowns, &[], &keep_from_spec(&s), EliminationOrder::Block).map_err(e)?;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut n = 0;
    while n < 20 {
        let g1 = q(rng.gen_range(1..200), rng.gen_range(1..200));
        let g2 = q(rng.gen_range(-200..-1), rng.gen_range(1..200));
        let a = vec![g1.clone(), g2.clone()];
        let b = vec![-q(1, 1) / &g2, -q(1, 1) / &g1];
        let (Some(pa), Some(pb)) = (ii.point_above(&a), ii.point_above(&b)) else { continue };
        ensure(ii.g_vars.iter().all(|&v| pa[v] == pb[v]), format!("g differs at {a:?}"))?;
        ensure(ii.vanishes_above(&a) == Some(true) && ii.vanishes_above(&b) == Some(true), format!("nonzero generator at {a:?}"))?;
        n += 1;
    }
    Ok("dims 2/2; both preimages annihilate every generator at 20 points".into())
}

fn c4() -> Check {
    let s = fixture("example4.net");
    let t = Instant::now();
    let r = informativity_verdict(&s, &InformativityOptions::default()).map_err(e)?;
    ensure(
        r.pi_shape == [8, 10] && r.generic_rank == 8 && r.verdict == InformativityVerdict::Informative,
        format!("Pi {:?} rank {}", r.pi_shape, r.generic_rank),
    )?;
    let ti = within(t, Duration::from_secs(30))?;
    let t = Instant::now();
    let r = identifiability_verdict(&s, &IdentifiabilityOptions::default()).map_err(e)?;
    ensure((r.dim_vo, r.dim_vc) == (11, 11), format!("dims {}/{}", r.dim_vo, r.dim_vc))?;
    let tid = within(t, Duration::from_secs(60 * 60))?;
    Ok(format!("rank 8 of 8x10 ({ti}); dims 11/11 ({tid})"))
}

fn c5() -> Check {
    let s = fixture("example5.net");
    let a = strings(&["w1", "w2"]);
    let mode = SubnetMode::MeasureCombinations;
    let tr = subnetwork_transform(&s, &a, &mode).map_err(e)?;
    let mut out = Vec::new();
    let variants: [(Vec<String>, Option<Vec<String>>); 3] = [
        (vec![], Some(vec![])),
        (strings(&["r4", "r5"]), None),
        (strings(&["r3", "r4", "r5"]), Some(strings(&["wt_w2", "r1", "r2"]))),
    ];
    for (drops, ident_cols) in variants {
        let t = Instant::now();
        let m = tr.info_m_with(&s, &drops, &[]).map_err(e)?;
        let r = informativity_of_m(&m, s.assumptions.input_spectrum_positive_definite, &InformativityOptions::default()).map_err(e)?;
        ensure(r.verdict == InformativityVerdict::Informative, format!("drop {drops:?}: rank {}/{}", r.generic_rank, r.required_rank))?;
        let mut what = format!("drop [{}]: rank {}/{}", drops.join(","), r.generic_rank, r.required_rank);
        if let Some(cols) = ident_cols {
            let opts = IdentifiabilityOptions {
                keep: KeepEntries {
                    columns: (!cols.is_empty()).then_some(cols),
                    ..Default::default()
                },
                ..Default::default()
            };
            let (r, _) = network_identifiability(&s, Some(&a), &mode, &opts).map_err(e)?;
            ensure(r.verdict == IdentVerdict::GenericallyLocallyIdentifiable, format!("drop {drops:?}: dims {}/{}", r.dim_vo, r.dim_vc))?;
            what.push_str(&format!(", dims {}/{}", r.dim_vo, r.dim_vc));
        }
        out.push(format!("{what} ({})", within(t, Duration::from_secs(60))?));
    }
    Ok(out.join("; "))
}

fn c6() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut done = 0;
    for i in 0..120 {
        let vars = rng.gen_range(1..=4);
        let gens = rng.gen_range(1..=3);
        let (names, src) = random_ideal_src(&mut rng, vars, gens, 3);
        let ideal = parse_ideal(&names, &src);
        let order = if i % 2 == 0 {
            MonomialOrder::grevlex(vars)
        } else {
            MonomialOrder::new(OrderKind::Lex, (0..vars).collect()).map_err(e)?
        };
        let gb = groebner_basis(&ideal, &order).map_err(e)?;
        ensure(gb.s_pairs_reduce_to_zero().map_err(e)?, format!("S-pair residue for {src:?}"))?;
        for g in ideal.generators() {
            ensure(gb.contains(g).map_err(e)?, format!("generator not in basis ideal for {src:?}"))?;
        }
        ensure(gb.is_reduced(), format!("basis not reduced for {src:?}"))?;
        done += 1;
    }
    Ok(format!("{done} random ideals, 0 failures"))
}

fn all_free_instances() -> Vec<NetworkSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut out = Vec::new();
    while out.len() < 30 {
        let n = rng.gen_range(1..=4);
        let m_r = rng.gen_range(0..=2);
        let m_e = rng.gen_range(1..=2);
        let p_y = rng.gen_range(1..=2);
        let codes: Vec<u8> = (0..rng.gen_range(1..30)).map(|_| rng.gen_range(0..=2)).collect();
        let s = all_free_network(n, m_r, m_e, p_y, &codes);
        if s.free_names().len() <= 10 {
            out.push(s);
        }
    }
    out
}

fn c7() -> Check {
    let nets = all_free_instances();
    for s in &nets {
        let m = assemble_informativity_m(s, &[], &[]).map_err(e)?;
        ensure(all_free_and_distinct(&m), "instance is not all-free")?;
        let r = informativity_of_m(&m, true, &InformativityOptions::default()).map_err(e)?;
        let g = r.graph.as_ref().ok_or("no graph")?.count;
        let gb = r.groebner.as_ref().ok_or("no groebner")?.generic_rank;
        let nu = r.numeric.as_ref().ok_or("no numeric")?.rank;
        ensure(g == gb && gb == nu, format!("graph {g}, groebner {gb}, numeric {nu} on\n{}", m.render()))?;
    }
    Ok(format!("{} networks, 0 disagreements", nets.len()))
}

fn c8() -> Check {
    let nets = all_free_instances();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut points = 0;
    for s in &nets {
        let m = assemble_informativity_m(s, &[], &[]).map_err(e)?;
        let pi = pi_of(&m).map_err(e)?;
        let names: Vec<String> = pi.entries()[0].ring().names().to_vec();
        let mut tries = 0;
        let mut hits = 0;
        while hits < 3 && tries < 20 {
            tries += 1;
            let vals: HashMap<String, Rational> = m
                .free_names()
                .into_iter()
                .map(|x| (x, q(rng.gen_range(1..=10_000), rng.gen_range(1..=10_000))))
                .collect();
            let num = m.eval_numeric(&vals).map_err(e)?;
            let p: Vec<Vec<Rational>> = num[..s.n].iter().map(|r| r[..s.n].to_vec()).collect();
            if rank_rational(p) < s.n {
                continue;
            }
            let pt: Vec<Rational> = names.iter().map(|x| vals[x].clone()).collect();
            let Some(pv) = pi.eval(&pt) else { continue };
            let (rm, rp) = (rank_rational(num), rank_rational(pv));
            ensure(rm == rp + s.n, format!("rank M {rm} vs rank Pi {rp} + n {}", s.n))?;
            hits += 1;
            points += 1;
        }
        ensure(hits > 0, "no non-degenerate point found")?;
    }
    Ok(format!("{} networks, {points} points, 0 mismatches", nets.len()))
}

fn c9() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut done = 0;
    for _ in 0..150 {
        let vars = rng.gen_range(1..=6);
        let gens = rng.gen_range(0..=3);
        let (names, src) = random_ideal_src(&mut rng, vars, gens, 3);
        let ideal = parse_ideal(&names, &src);
        let a = ideal_dimension(&ideal).map_err(e)?;
        let b = brute_force_dimension(&ideal, 6).map_err(e)?;
        ensure(a == b, format!("dimension {a} vs brute force {b} for {src:?}"))?;
        done += 1;
    }
    Ok(format!("{done} random ideals, 0 mismatches"))
}

fn c10() -> Check {
    let dir = tempfile::tempdir().map_err(e)?;
    let mut outs = Vec::new();
    for (file, extra) in [("example1.net", vec![]), ("example5.net", vec!["--resample-knowns", "2"])] {
        let mut got = Vec::new();
        for i in 0..2 {
            let p = dir.path().join(format!("{file}.{i}.json"));
            let mut args = vec!["check".to_string(), fixture_path(file).to_string_lossy().into_owned()];
            args.extend(["--seed", "11", "--out"].map(String::from));
            args.push(p.to_string_lossy().into_owned());
            args.extend(extra.iter().map(|s| s.to_string()));
            let st = Command::new(env!("CARGO_BIN_EXE_netalg")).args(&args).output().map_err(e)?;
            ensure(st.status.code() == Some(0), format!("{file}: exit {:?}", st.status.code()))?;
            got.push(std::fs::read(&p).map_err(e)?);
        }
        ensure(got[0] == got[1], format!("{file}: reports differ"))?;
        outs.push(file);
    }
    Ok(format!("byte-identical reports for {}", outs.join(", ")))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("example 1 informativity", c1),
        ("example 1 identifiability", c2),
        ("example 3 local vs global", c3),
        ("example 4 informativity and identifiability", c4),
        ("example 5 sub-network variants", c5),
        ("groebner certificates", c6),
        ("rank agreement on all-free networks", c7),
        ("block rank identity", c8),
        ("dimension against brute force", c9),
        ("determinism", c10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(msg) => println!("criterion {:>2} PASS  {name}: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {msg}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
