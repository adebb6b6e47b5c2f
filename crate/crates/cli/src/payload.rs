//! JSON payloads for each subcommand, built on `serde_json::Value` so keys
//! come out sorted.

use belyi_core::belyi::{BelyiCertificate, BelyiConstruction, BelyiStep, Rejection};
use belyi_core::exact::{factor, log_approx, Integer, LogApprox, REPORT_DIGITS};
use belyi_core::heights::{AbcVerdict, ApproxVerdict, ScanEntry, ScanResult};
use belyi_core::siegel::{
    AffineCurve, Lemma9Outcome, PrimeStatus, SIntegralPoint, SSet, SiegelAuditReport,
};
use belyi_core::upoly::{Divisor, RamificationPoint};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

fn log(n: &Integer) -> LogApprox {
    log_approx(n, REPORT_DIGITS).expect("positive argument")
}

fn opt_f64(x: Option<f64>) -> Value {
    x.map_or(Value::Null, |v| json!(v))
}

fn profile(p: &[RamificationPoint]) -> Value {
    p.iter()
        .map(|r| {
            json!({
                "point": r.point.to_string(),
                "point_degree": r.point.degree(),
                "value": r.value.to_string(),
                "index": r.index,
            })
        })
        .collect()
}

fn divisor(d: &Divisor) -> Value {
    d.terms()
        .iter()
        .map(|(p, m)| json!({"point": p.to_string(), "point_degree": p.degree(), "multiplicity": m}))
        .collect()
}

/// The certificate document: map, degree, profile and the three fibers.
pub fn certificate(c: &BelyiCertificate) -> Value {
    json!({
        "map": c.map.to_string(),
        "degree": c.degree,
        "profile": profile(&c.profile),
        "fibers": {
            "0": divisor(&c.fiber_zero),
            "1": divisor(&c.fiber_one),
            "oo": divisor(&c.fiber_infinity),
        },
    })
}

/// SHA-256 of the compact canonical certificate document.
pub fn certificate_digest(c: &BelyiCertificate) -> String {
    let bytes = serde_json::to_vec(&certificate(c)).expect("serializable");
    Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
}

pub fn belyi_certified(c: &BelyiCertificate) -> Value {
    json!({
        "certified": true,
        "certificate": certificate(c),
        "certificate_sha256": certificate_digest(c),
        "ramification_total": 2 * c.degree - 2,
        "preimage_count": c.preimage_count(),
    })
}

pub fn belyi_rejected(r: &Rejection) -> Value {
    json!({
        "certified": false,
        "map": r.map.to_string(),
        "degree": r.degree,
        "profile": profile(&r.profile),
        "offending": r.offending.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
    })
}

pub fn belyi_make(b: &BelyiConstruction, fiber_count: i64, chi: i64) -> Value {
    let steps: Vec<Value> = b
        .steps
        .iter()
        .map(|s| match s {
            BelyiStep::Normalize { points, map } => json!({
                "kind": "normalize",
                "points": points.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                "map": map.to_string(),
            }),
            BelyiStep::Flatten { value, permutation, m, n, map } => json!({
                "kind": "flatten",
                "value": value.to_string(),
                "permutation": permutation,
                "m": m,
                "n": n,
                "map": map.to_string(),
            }),
        })
        .collect();
    json!({
        "input": b.input.to_string(),
        "marked": b.marked.to_string(),
        "steps": steps,
        "certificate": certificate(&b.certificate),
        "certificate_sha256": certificate_digest(&b.certificate),
        "euler_characteristic": chi,
        "fiber_count_on_u": fiber_count,
    })
}

fn factorization(n: &Integer) -> Value {
    serde_json::to_value(factor(n).expect("nonzero")).expect("serializable")
}

fn scan_entry(e: &ScanEntry) -> Value {
    let t = &e.triple;
    json!({
        "a": t.a.to_string(),
        "b": t.b.to_string(),
        "c": t.c.to_string(),
        "M": e.m.to_string(),
        "R": e.r.to_string(),
        "quality": e.quality,
        "factorizations": {"a": factorization(&t.a), "b": factorization(&t.b), "c": factorization(&t.c)},
    })
}

pub fn abc_scan(s: &ScanResult) -> Value {
    json!({
        "c_max": s.c_max,
        "top_k": s.top_k,
        "considered": s.considered,
        "top": s.top.iter().map(scan_entry).collect::<Vec<_>>(),
        "flagged": s.flagged.iter().map(scan_entry).collect::<Vec<_>>(),
    })
}

/// RFC 4180 CSV of the ranked triples.
pub fn abc_scan_csv(s: &ScanResult) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["a", "b", "c", "M", "R", "quality"]).expect("in-memory write");
    for e in &s.top {
        let t = &e.triple;
        w.write_record([
            t.a.to_string(),
            t.b.to_string(),
            t.c.to_string(),
            e.m.to_string(),
            e.r.to_string(),
            e.quality.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

pub fn abc_check(v: &AbcVerdict) -> Value {
    let t = &v.triple;
    json!({
        "mode": "exact",
        "a": t.a.to_string(),
        "b": t.b.to_string(),
        "c": t.c.to_string(),
        "M": v.m.to_string(),
        "R": v.r.to_string(),
        "log_M": log(&v.m),
        "log_R": log(&v.r),
        "quality": t.quality_f64(),
        "eps": v.eps.to_string(),
        "rho": v.rho.to_string(),
        "satisfied": v.satisfied,
        "strict": v.strict,
        "lhs_bits": v.lhs.bits(),
        "rhs_bits": v.rhs.bits(),
    })
}

pub fn abc_check_approx(v: &ApproxVerdict) -> Value {
    let t = &v.triple;
    json!({
        "mode": "float",
        "a": t.a.to_string(),
        "b": t.b.to_string(),
        "c": t.c.to_string(),
        "log_M": v.log_m,
        "log_R": v.log_r,
        "eps": v.eps,
        "c_log": v.c,
        "satisfied": v.satisfied,
    })
}

pub fn height(coords: &[Integer; 3], m: &Integer) -> Value {
    json!({
        "point": coords.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "M": m.to_string(),
        "log_M": log(m),
    })
}

pub fn radical(coords: &[Integer; 3], r: &Integer) -> Value {
    json!({
        "point": coords.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "R": r.to_string(),
        "primes": factor(r).expect("positive").primes().map(|p| p.to_string()).collect::<Vec<_>>(),
        "log_R": log(r),
    })
}

fn curve(c: &AffineCurve) -> Value {
    json!({
        "points_at_infinity": c.points_at_infinity().to_string(),
        "t": c.t(),
        "euler_characteristic": c.euler_characteristic(),
    })
}

fn s_set(s: &SSet) -> Value {
    json!({
        "primes": s.primes().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "sigma_s": s.log_sum(),
    })
}

fn point(p: &SIntegralPoint) -> Value {
    json!({
        "x": p.x.to_string(),
        "witnesses": p.witnesses.iter().map(|w| json!({
            "at": w.at.to_string(),
            "value": w.value.to_string(),
            "exponents": w.exponents,
        })).collect::<Vec<_>>(),
    })
}

pub fn siegel_enumerate(c: &AffineCurve, s: &SSet, bound: u32, pts: &[SIntegralPoint]) -> Value {
    json!({
        "curve": curve(c),
        "s": s_set(s),
        "bound": bound,
        "count": pts.len(),
        "points": pts.iter().map(point).collect::<Vec<_>>(),
    })
}

fn lemma9(o: &Lemma9Outcome) -> Value {
    match o {
        Lemma9Outcome::Skipped { r } => json!({"status": "skipped", "f_x": r.to_string()}),
        Lemma9Outcome::Checked { r, checks } => json!({
            "status": if o.holds() { "holds" } else { "violated" },
            "f_x": r.to_string(),
            "primes": checks.iter().map(|c| {
                let (status, sum, witnesses) = match &c.status {
                    PrimeStatus::InS => ("in_s", Value::Null, Value::Null),
                    PrimeStatus::InT => ("in_t", Value::Null, Value::Null),
                    PrimeStatus::Checked { sum, witnesses } => ("checked", json!(sum), json!(witnesses)),
                };
                json!({"p": c.p.to_string(), "status": status, "sum": sum, "components": witnesses})
            }).collect::<Vec<_>>(),
        }),
    }
}

pub fn siegel_audit(r: &SiegelAuditReport) -> Value {
    let cert = &r.certificate;
    let rad_by_x = |x: &belyi_core::upoly::P1Point| {
        r.prop8
            .as_ref()
            .and_then(|p| p.records.iter().find(|rec| &rec.x == x))
            .map(|rec| json!({"R": rec.radical.to_string(), "log_R": log(&rec.radical), "residual": rec.residual}))
            .unwrap_or(Value::Null)
    };
    let table: Vec<Value> = r
        .inequality1
        .records
        .iter()
        .zip(&r.lemma9)
        .map(|(rec, l9)| {
            json!({
                "x": rec.x.to_string(),
                "H": rec.height.to_string(),
                "h_U": rec.h_u,
                "residual": rec.residual,
                "below_bound_term": rec.below_bound_term,
                "rad": rad_by_x(&rec.x),
                "lemma9": lemma9(l9),
            })
        })
        .collect();
    let components: Vec<Value> = r
        .decomposition
        .components
        .iter()
        .map(|c| {
            json!({
                "fiber": c.fiber.to_string(),
                "point": c.point.to_string(),
                "multiplicity": c.multiplicity,
                "degree": c.degree,
                "m": c.m.to_string(),
            })
        })
        .collect();
    let (c1, c2, frontier) = match &r.prop8 {
        Some(p) => (
            json!(p.fit.c1.to_string()),
            json!(p.fit.c2),
            p.frontier
                .iter()
                .map(|f| json!({"c1": f.c1.to_string(), "c2": f.c2}))
                .collect::<Vec<_>>(),
        ),
        None => (Value::Null, Value::Null, Vec::new()),
    };
    let functoriality = r.functoriality.as_ref().map_or(Value::Null, |f| {
        json!({
            "holds": f.holds,
            "components": f.components.iter().map(|c| json!({
                "component": c.index,
                "bound": c.bound,
                "max_error": c.max_error,
                "holds": c.holds,
            })).collect::<Vec<_>>(),
        })
    });
    json!({
        "curve": curve(&r.curve),
        "s": s_set(&r.s),
        "eps": r.eps.to_string(),
        "bound": r.bound,
        "input_map": r.input_map.to_string(),
        "constructed": r.constructed,
        "belyi_map": cert.map.to_string(),
        "degree": cert.degree,
        "certificate_sha256": certificate_digest(cert),
        "components": components,
        "bad_primes": r.bad_primes.primes().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "point_count": r.points.len(),
        "points": table,
        "lemma9_holds": r.lemma9.iter().all(Lemma9Outcome::holds),
        "fits": {
            "gamma": opt_f64(r.inequality1.gamma),
            "k1": r.inequality1.coef.to_string(),
            "k3": opt_f64(r.inequality1.gamma),
            "c1": c1,
            "c2": c2,
            "c1_c2_frontier": frontier,
            "kappa": r.prop8.as_ref().map(|p| p.kappa.to_string()),
            "skipped": r.prop8.as_ref().map(|p| p.skipped),
        },
        "functoriality": functoriality,
        "trend": {
            "bounds": r.trend.bounds,
            "point_counts": r.trend.point_counts,
            "gammas": r.trend.gammas.iter().map(|g| opt_f64(*g)).collect::<Vec<_>>(),
            "stable": r.trend.stable,
        },
        "s_growth": r.s_growth.iter().map(|(s, g)| json!({
            "s": s.to_string(),
            "gamma": opt_f64(*g),
        })).collect::<Vec<_>>(),
    })
}
