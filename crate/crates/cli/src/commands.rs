use std::ops::RangeInclusive;

use circulant::families::{
    family_check, family_general_p, family_m2, family_m2_general, family_m3, family_m3_general,
    family_m5, family_m5_general, family_m7, family_m7_general, FamilyInstance, GeneralPParams,
};
use circulant::groups::{census_with, AnchorFilter, CensusConfig, CensusSummary, OrbitGroup};
use circulant::oracle::{brute_force_isomorphic, gcd_signature_check, spectra_match, IsoConfig};
use circulant::theta::admissible_moduli;
use circulant::type1::Type1Group;
use circulant::{
    classification_table, make_circulant, reflexive_reduce, t2_set, type1_group, type1_witnesses,
    v_group, v_set, CirculantGraph, Error, JumpSet, Rotation, Verdict,
};
use clap::ValueEnum;
use serde_json::{json, Value};

use crate::output::{Envelope, Format, Grid, Sink};
use crate::{exit_code, Failure, FamilyArgs, FamilyKind, GraphArgs, RotationArgs};

type Outcome = Result<(), Failure>;

fn jumps(s: &JumpSet) -> Value {
    json!(s.jumps())
}

fn list(s: &JumpSet) -> String {
    s.jumps().iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

fn verdict_key(v: Verdict) -> Value {
    serde_json::to_value(v).expect("verdicts serialize")
}

fn emit(
    sink: &mut Sink,
    command: &str,
    inputs: Value,
    result: Value,
    findings: Vec<String>,
    grid: &Grid,
) -> Outcome {
    let env = Envelope { command: command.into(), inputs, result, findings };
    sink.envelope(&env, grid)?;
    Ok(())
}

fn group_json(g: &OrbitGroup) -> Value {
    json!({
        "modulus": g.modulus,
        "generator": g.generator,
        "order": g.order,
        "index_order": g.index_order,
        "period": g.period,
        "labels": g.labels.iter().map(|l| json!({
            "t": l.t,
            "jumps": l.graph.as_ref().map(|g| jumps(g.jumps())),
        })).collect::<Vec<_>>(),
    })
}

pub fn reduce(sink: &mut Sink, n: u64, values: &[i64]) -> Outcome {
    let s = reflexive_reduce(n, values)?;
    let mut grid = Grid::new(["n", "jumps"]);
    grid.push([n.to_string(), s.to_string()]);
    emit(
        sink,
        "reduce",
        json!({"n": n, "values": values}),
        json!({"n": n, "jumps": jumps(&s), "rendered": s.to_string()}),
        Vec::new(),
        &grid,
    )
}

/// A member whose powers under the table reach every member, if any.
fn cyclic_generator(g: &Type1Group) -> Option<usize> {
    let k = g.order();
    (0..k).find(|&a| {
        let mut x = g.identity;
        let mut seen = 0;
        loop {
            x = g.compose(x, a);
            seen += 1;
            if x == g.identity {
                break;
            }
        }
        seen == k
    })
}

pub fn t1set(sink: &mut Sink, a: &GraphArgs) -> Outcome {
    let g = make_circulant(a.n, &a.set)?;
    let grp = type1_group(&g)?;
    let set = &grp.carrier;
    let mut grid = Grid::new(["member", "representative", "multipliers"]);
    for (i, m) in set.members.iter().enumerate() {
        let ws: Vec<String> = set.witnesses[i].iter().map(u64::to_string).collect();
        grid.push([m.jumps().to_string(), grp.representatives[i].to_string(), ws.join(",")]);
    }
    let generator = cyclic_generator(&grp).map(|i| grp.representatives[i]);
    emit(
        sink,
        "t1set",
        json!({"n": a.n, "set": a.set}),
        json!({
            "base": jumps(g.jumps()),
            "members": set.members.iter().map(|m| jumps(m.jumps())).collect::<Vec<_>>(),
            "representatives": grp.representatives,
            "witnesses": set.witnesses,
            "stabilizer": grp.stabilizer,
            "group": {
                "modulus": a.n,
                "generator": generator,
                "order": grp.order(),
                "labels": set.members.iter().map(|m| jumps(m.jumps())).collect::<Vec<_>>(),
            },
        }),
        Vec::new(),
        &grid,
    )
}

pub fn t2set(sink: &mut Sink, a: &RotationArgs) -> Outcome {
    let g = make_circulant(a.n, &a.set)?;
    let s = t2_set(a.n, a.m, &g)?;
    let grp = circulant::t2_group(&s)?;
    let mut grid = Grid::new(["member", "shifts"]);
    let mut shifts = Vec::new();
    for m in &s.members {
        let ts = s.shifts_to(m);
        grid.push([
            m.jumps().to_string(),
            ts.iter().map(u64::to_string).collect::<Vec<_>>().join(","),
        ]);
        shifts.push(ts);
    }
    emit(
        sink,
        "t2set",
        json!({"n": a.n, "m": a.m, "set": a.set}),
        json!({
            "base": jumps(g.jumps()),
            "members": s.members.iter().map(|m| jumps(m.jumps())).collect::<Vec<_>>(),
            "shifts": shifts,
            "t2_indices": s.t2_indices,
            "graph_period": s.graph_period,
            "equals_v": s.equals_v,
            "group": group_json(&grp),
        }),
        Vec::new(),
        &grid,
    )
}

pub fn vset(sink: &mut Sink, a: &RotationArgs) -> Outcome {
    let g = make_circulant(a.n, &a.set)?;
    let v = v_set(a.n, a.m, &g)?;
    let grp = v_group(&v)?;
    let mut grid = Grid::new(["t", "verdict", "image"]);
    for im in &v.images {
        grid.push([
            im.t.to_string(),
            im.verdict.label().to_string(),
            im.image.as_ref().map_or("-".into(), |s| s.to_string()),
        ]);
    }
    let type2: Vec<u64> =
        v.images.iter().filter(|im| im.verdict == Verdict::Type2).map(|im| im.t).collect();
    emit(
        sink,
        "vset",
        json!({"n": a.n, "m": a.m, "set": a.set}),
        json!({
            "base": jumps(g.jumps()),
            "modulus": v.modulus(),
            "graph_period": v.graph_period,
            "rows": v.images.iter().map(|im| json!({
                "t": im.t,
                "verdict": verdict_key(im.verdict),
                "jumps": im.image.as_ref().map(jumps),
            })).collect::<Vec<_>>(),
            "distinct": v.distinct.iter().map(|d| jumps(d.jumps())).collect::<Vec<_>>(),
            "type2_shifts": type2,
            "group": group_json(&grp),
        }),
        v.findings.clone(),
        &grid,
    )
}

pub fn table(sink: &mut Sink, a: &RotationArgs, t: Option<RangeInclusive<u64>>) -> Outcome {
    let g = make_circulant(a.n, &a.set)?;
    let rows = classification_table(a.n, a.m, &g, t.clone())?;
    let mut grid = Grid::new(["t", "theta(R u (n-R))", "circulant"]);
    let mut findings = Vec::new();
    for r in &rows {
        let cells: Vec<String> = r.directed_values.iter().map(u64::to_string).collect();
        grid.push([r.t.to_string(), cells.join(", "), r.verdict.label().to_string()]);
        if r.pretest_contradicted() {
            findings.push(format!("t = {}: circulant image failed the symmetry pre-test", r.t));
        }
    }
    let range = t.map(|r| json!([r.start(), r.end()]));
    emit(
        sink,
        "table",
        json!({"n": a.n, "m": a.m, "set": a.set, "t": range}),
        json!({
            "base": jumps(g.jumps()),
            "rows": rows.iter().map(|r| json!({
                "t": r.t,
                "directed": r.directed_values,
                "verdict": verdict_key(r.verdict),
                "label": r.verdict.label(),
                "jumps": r.image.as_ref().map(jumps),
                "witnesses": r.witnesses,
            })).collect::<Vec<_>>(),
        }),
        findings,
        &grid,
    )
}

fn need(v: Option<u64>, name: &str) -> Result<u64, Error> {
    v.ok_or_else(|| Error::InvalidFamilyParams(format!("--{name} is required for this kind")))
}

fn build_family(a: &FamilyArgs) -> Result<FamilyInstance, Error> {
    match a.kind {
        FamilyKind::M2 => family_m2(a.n, need(a.s, "s")?),
        FamilyKind::M2General => {
            family_m2_general(a.n, need(a.s, "s")?, &a.p_list, need(a.y, "y")?)
        }
        FamilyKind::M3 => family_m3(a.n),
        FamilyKind::M3General => family_m3_general(a.n, &a.p_list),
        FamilyKind::M5 => family_m5(a.n),
        FamilyKind::M5General => family_m5_general(a.n, &a.p_list),
        FamilyKind::M7 => family_m7(a.n),
        FamilyKind::M7General => family_m7_general(a.n, &a.p_list),
        FamilyKind::GeneralP => family_general_p(GeneralPParams::new(
            need(a.p, "p")?,
            a.n,
            need(a.x, "x")?,
            a.y.unwrap_or(0),
        )?),
    }
}

pub fn family(sink: &mut Sink, a: &FamilyArgs) -> Outcome {
    let f = build_family(a)?;
    let report = family_check(&f)?;
    let mut grid = Grid::new(["index", "jumps"]);
    for (i, s) in f.sets.iter().enumerate() {
        grid.push([(i + 1).to_string(), s.to_string()]);
    }
    let inputs = json!({
        "kind": a.kind.to_possible_value().map(|v| v.get_name().to_string()),
        "n": a.n, "s": a.s, "p_list": a.p_list, "y": a.y, "p": a.p, "x": a.x,
    });
    let result = json!({
        "order": f.order,
        "m": f.m,
        "sets": f.sets.iter().map(jumps).collect::<Vec<_>>(),
        "relations": report.relations,
        "claim": f.claim,
        "resolution": report.resolution,
        "type1_pairs": report.type1_pairs,
        "t2_members": report.t2_members.iter().map(jumps).collect::<Vec<_>>(),
        "group_order": report.group_order,
        "group_generator": report.group_generator,
        "verified": report.verified(),
        "failures": report.failures,
    });
    emit(sink, "family", inputs, result, report.failures.clone(), &grid)?;
    match report.failures.first() {
        None => Ok(()),
        Some(first) => Err(Failure { code: 5, message: format!("verification failed: {first}") }),
    }
}

fn type2_shifts(g: &CirculantGraph, h: &CirculantGraph, m: u64) -> Result<Vec<u64>, Error> {
    let s = t2_set(g.n(), m, g)?;
    if h == g {
        return Ok(Vec::new());
    }
    Ok(s.shifts_to(h))
}

pub fn iso(
    sink: &mut Sink,
    n: u64,
    a: &[i64],
    b: &[i64],
    m: Option<u64>,
    cap: u64,
    budget: u64,
) -> Outcome {
    let g = make_circulant(n, a)?;
    let h = make_circulant(n, b)?;
    let inputs = json!({"n": n, "a": a, "b": b, "m": m});
    let signature = gcd_signature_check(&g, &h)?;
    let spectra = spectra_match(&g, &h);

    let mut result = json!({
        "a": jumps(g.jumps()),
        "b": jumps(h.jumps()),
        "gcd_signature_equal": signature,
        "spectra_equal": spectra,
    });
    let set = |result: &mut Value, key: &str, v: Value| {
        result.as_object_mut().expect("object").insert(key.to_string(), v);
    };

    let relation = if g == h {
        "equal"
    } else if let witnesses @ [_, ..] = type1_witnesses(&g, &h)?.as_slice() {
        set(&mut result, "witnesses", json!(witnesses));
        "type1"
    } else {
        let moduli = match m {
            Some(m) => {
                Rotation::for_graph(&g, m)?;
                vec![m]
            }
            None => admissible_moduli(n, g.jumps()),
        };
        let mut found = None;
        for m in moduli {
            let ts = type2_shifts(&g, &h, m)?;
            if !ts.is_empty() {
                found = Some((m, ts));
                break;
            }
        }
        match found {
            Some((m, ts)) => {
                set(&mut result, "m", json!(m));
                set(&mut result, "shifts", json!(ts));
                "type2"
            }
            None if !signature || !spectra => "not-isomorphic",
            None if n > cap => "inconclusive",
            None => match brute_force_isomorphic(&g, &h, &IsoConfig { cap, budget }) {
                Ok(Some(w)) => {
                    set(&mut result, "permutation", json!(w.permutation));
                    "isomorphic-unclassified"
                }
                Ok(None) => "not-isomorphic",
                Err(Error::BudgetExceeded { .. }) => "inconclusive",
                Err(e) => return Err(e.into()),
            },
        }
    };
    set(&mut result, "relation", json!(relation));
    let mut grid = Grid::new(["a", "b", "relation"]);
    grid.push([g.jumps().to_string(), h.jumps().to_string(), relation.to_string()]);
    emit(sink, "iso", inputs, result, Vec::new(), &grid)
}

pub fn census(
    sink: &mut Sink,
    n: u64,
    m: u64,
    sizes: RangeInclusive<usize>,
    budget: u128,
    require_jump: Option<u64>,
) -> Outcome {
    let mut cfg = CensusConfig::new(n, m, sizes.clone());
    cfg.max_candidates = budget;
    if let Some(r) = require_jump {
        cfg.filter = AnchorFilter::RequireJump(r);
    }
    let inputs = json!({
        "n": n, "m": m, "sizes": [sizes.start(), sizes.end()],
        "budget": budget.to_string(), "require_jump": require_jump,
    });
    let format = sink.format();
    let mut grid = Grid::new(["representative", "members", "t2_equals_v"]);
    let mut io_error = None;
    let outcome = census_with(&cfg, |class| {
        let members: Vec<Value> = class.members.iter().map(|g| jumps(g.jumps())).collect();
        if format == Format::Json {
            let record = json!({
                "record": "class",
                "representative": jumps(class.representative.jumps()),
                "members": members,
                "t2_indices": class.t2_indices,
                "graph_period": class.graph_period,
                "t2_equals_v": class.t2_equals_v,
            });
            if let Err(e) = sink.line(&record) {
                io_error.get_or_insert(e);
            }
        }
        grid.push([
            list(class.representative.jumps()),
            class.members.iter().map(|g| g.jumps().to_string()).collect::<Vec<_>>().join(" "),
            class.t2_equals_v.to_string(),
        ]);
    });
    if let Some(e) = io_error {
        return Err(e.into());
    }
    let (summary, failure) = match outcome {
        Ok(s) => (json!(s), None),
        Err(e @ Error::BudgetExceeded { .. }) => (
            json!(CensusSummary {
                n,
                m,
                sizes: sizes.clone(),
                candidates: cfg.candidate_count(),
                anchored: 0,
                classes: 0,
                t2_equals_v: 0,
                complete: false,
            }),
            Some(Failure { code: exit_code(&e), message: e.to_string() }),
        ),
        Err(e) => return Err(e.into()),
    };
    let env = Envelope { command: "census".into(), inputs, result: summary, findings: Vec::new() };
    match format {
        Format::Json => sink.line(&env)?,
        _ => sink.envelope(&env, &grid)?,
    }
    match failure {
        Some(f) => Err(f),
        None => Ok(()),
    }
}
