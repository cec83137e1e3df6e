use hypercert::chern_ring::SurfaceData;
use hypercert::euler_rr::{
    chi_e2m_checked, chi_sym_checked, leading_coeff_chi_e2m, leading_coeff_chi_sym, TwistClass,
};
use hypercert::nadel::{
    fermat_deformation, fermat_pole_candidate, h0_sym_cotangent_p3, pole_budget, pole_divisor,
    smoothness_criterion, solve_connection, Z_VARS,
};
use hypercert::polyalg::{fmt_rat, parse_rat};
use hypercert::thresholds::{degree_sweep, Sweep};
use hypercert::{Error, Exec, MPoly, Rat};
use serde_json::{json, Value};

use crate::report::Report;

const RING_TABLE_NAMES: [&str; 9] = [
    "u1^4",
    "u1^3 u2",
    "u1^2 u2^2",
    "u1 u2^3",
    "u2^4",
    "u1^3 F",
    "u1^2 u2 F",
    "u1 u2^2 F",
    "u2^3 F",
];

pub const SWEEP_CSV_HEADER: [&str; 13] = [
    "d",
    "c1sq",
    "c2",
    "theta1_lower",
    "theta1_upper",
    "theta2_lower",
    "gg_existence",
    "miyaoka",
    "ratio_7_9",
    "bogomolov",
    "foliation",
    "hyperbolicity",
    "hyperbolicity_margin",
];

pub enum CliError {
    Usage(String),
    Lib(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(m) | Error::Parse(m) => CliError::Usage(m),
            other => CliError::Lib(other),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

fn table_json(values: impl IntoIterator<Item = String>) -> Value {
    Value::Array(
        RING_TABLE_NAMES
            .iter()
            .zip(values)
            .map(|(n, v)| json!({"monomial": n, "value": v}))
            .collect(),
    )
}

pub fn ring_table(d: Option<i64>, symbolic: bool) -> CliResult<Report> {
    let (params, results) = if symbolic {
        let s = SurfaceData::symbolic();
        let table = s.intersection_table_x2(&s.symbolic_f());
        (
            json!({"symbolic": true}),
            json!({
                "symbols": ["c1sq", "c2", "c1F", "FF"],
                "table": table_json(table.iter().map(MPoly::to_string)),
            }),
        )
    } else {
        let d = d.ok_or_else(|| CliError::Usage("give --d or --symbolic".into()))?;
        let s = SurfaceData::p3_surface(d)?;
        let table = s.intersection_table_x2(&s.hyperplane());
        (
            json!({"d": d}),
            json!({
                "F": "hyperplane class",
                "table": table_json(table.iter().map(fmt_rat)),
            }),
        )
    };
    Ok(Report::new(
        "ring-table",
        params,
        results,
        &["intersection numbers on the Semple tower X_2 from the relations for u1^2 and u2^2"],
    ))
}

#[derive(Clone, Copy, Debug, clap::ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Bundle {
    Sym,
    E2m,
}

pub fn chi(
    d: i64,
    m: Option<u64>,
    bundle: Bundle,
    twist: &str,
    asymptotic: bool,
) -> CliResult<Report> {
    let t =
        parse_rat(twist).map_err(|e| CliError::Usage(format!("malformed twist `{twist}`: {e}")))?;
    if m.is_none() && !asymptotic {
        return Err(CliError::Usage("give --m, --asymptotic, or both".into()));
    }
    let s = SurfaceData::p3_surface(d)?;
    let l = TwistClass::canonical_multiple(&s, &t);
    let mut results = serde_json::Map::new();
    if let Some(m) = m {
        let v = match bundle {
            Bundle::Sym => chi_sym_checked(&s, m, &l)?,
            Bundle::E2m => chi_e2m_checked(&s, m, &l)?,
        };
        results.insert("chi".into(), fmt_rat(&v).into());
    }
    if asymptotic {
        let (power, lead) = match bundle {
            Bundle::Sym => (3, leading_coeff_chi_sym(&s, &l)?),
            Bundle::E2m => (4, leading_coeff_chi_e2m(&s, &l)?),
        };
        results.insert("leading_power".into(), power.into());
        results.insert("leading_coefficient".into(), fmt_rat(&lead).into());
    }
    results.insert("c1sq".into(), fmt_rat(&s.c1sq).into());
    results.insert("c2".into(), fmt_rat(&s.c2).into());
    let anchor = match bundle {
        Bundle::Sym => "Riemann-Roch for S^m T* (x) tK via Chern roots",
        Bundle::E2m => "Riemann-Roch for E_2,m T* (x) tK via its graded pieces S^(m-3j) T* (x) K^j",
    };
    Ok(Report::new(
        "chi",
        json!({"d": d, "m": m, "bundle": bundle, "twist": fmt_rat(&t), "asymptotic": asymptotic}),
        Value::Object(results),
        &[anchor, "Chern numbers of a smooth degree d surface in P^3"],
    ))
}

pub fn check_sweep_range(dmin: i64, dmax: i64, cap: i64) -> CliResult<()> {
    if dmin < 5 || dmin > dmax || dmax > cap {
        return Err(CliError::Usage(format!(
            "need 5 <= dmin <= dmax <= {cap}, got dmin = {dmin}, dmax = {dmax}"
        )));
    }
    Ok(())
}

pub fn sweep(dmin: i64, dmax: i64, cap: i64, exec: Exec) -> CliResult<Sweep> {
    check_sweep_range(dmin, dmax, cap)?;
    Ok(degree_sweep(dmin, dmax, exec)?)
}

pub fn sweep_report(dmin: i64, dmax: i64, s: &Sweep) -> Report {
    Report::new(
        "sweep",
        json!({"dmin": dmin, "dmax": dmax}),
        serde_json::to_value(s).expect("sweep serializes"),
        &[
            "13 c1^2 - 9 c2 > 0: positive m^4 coefficient of chi(E_2,m)",
            "4 c1^2 - 3 c2 > 0 and 5 c1^2 - 3 c2 > 0: second-order multi-foliation test",
            "c1^2 (13 + 12 theta2) > 9 c2 with theta2 >= -1/6 + 1/(2(d-4))",
        ],
    )
}

pub fn sweep_csv(s: &Sweep) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(SWEEP_CSV_HEADER).expect("in-memory write");
    let opt = |r: Option<&Rat>| r.map(fmt_rat).unwrap_or_default();
    for r in &s.rows {
        let main = r.hyperbolicity.as_ref();
        w.write_record([
            r.d.to_string(),
            fmt_rat(&r.c1sq),
            fmt_rat(&r.c2),
            opt(r.theta1.lower.as_ref()),
            opt(r.theta1.upper.as_ref()),
            opt(r.theta2.as_ref().and_then(|t| t.lower.as_ref())),
            r.gg_existence.holds.to_string(),
            r.miyaoka.holds.to_string(),
            r.ratio_7_9.holds.to_string(),
            r.bogomolov.holds.to_string(),
            r.foliation.holds.to_string(),
            main.map(|v| v.holds.to_string()).unwrap_or_default(),
            opt(main.map(|v| &v.margin)),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("utf-8 fields")
}

pub fn connection(d: u32, k: &[u32], a: Option<&str>, exec: Exec) -> CliResult<Report> {
    let k: [u32; 4] = k
        .try_into()
        .map_err(|_| CliError::Usage(format!("--k needs four exponents, got {}", k.len())))?;
    let sum: u32 = k.iter().sum();
    if d < 5 || sum != d {
        return Err(CliError::Usage(format!(
            "need d >= 5 and k0 + k1 + k2 + k3 = d, got d = {d}, sum = {sum}"
        )));
    }
    let a = a
        .map(|s| parse_rat(s).map_err(|e| CliError::Usage(format!("malformed --a `{s}`: {e}"))))
        .transpose()?;
    let mut fam = fermat_deformation(d, k)?;
    if let Some(v) = &a {
        fam = fam.specialize(hypercert::nadel::PARAM, v)?;
    }
    let gamma = solve_connection(&fam, exec)?;
    let checked = gamma.verify(&fam)?;
    if !gamma.is_homogeneous_of_degree_minus_one() {
        return Err(CliError::Lib(Error::Invariant(
            "Christoffel symbols are not homogeneous of degree -1".into(),
        )));
    }
    let b = pole_divisor(&gamma, &[fermat_pole_candidate(d, k, a.as_ref())]);
    let smooth = smoothness_criterion(d, k, a.as_ref())?;
    let budget = (d >= 6).then(|| pole_budget(d)).transpose()?;

    let entries: Vec<Value> = gamma
        .entries()
        .map(|((i, j, kk), g)| {
            json!({"i": i, "j": j, "k": kk, "num": g.num().to_string(), "den": g.den().to_string()})
        })
        .collect();
    let factors: Vec<Value> = b
        .factors
        .iter()
        .map(|(f, mult)| json!({"factor": f.to_string(), "multiplicity": mult}))
        .collect();
    let jacobian_degree = gamma
        .jacobian_det()
        .homogeneous_degree(&Z_VARS)
        .and_then(|deg| deg.finite());
    let budget_json = budget.map(|bd| {
        json!({
            "p": bd.p,
            "epsilon": bd.epsilon,
            "t1": fmt_rat(&bd.t1),
            "bounds": bd.bounds.iter().map(|e| json!({
                "m": e.m,
                "parity_bound": fmt_rat(&e.parity_bound),
                "uniform_bound": fmt_rat(&e.uniform_bound),
            })).collect::<Vec<_>>(),
        })
    });
    let results = json!({
        "d": d,
        "k": k,
        "jacobian_degree": jacobian_degree,
        "equations_checked": checked,
        "gamma": entries,
        "pole_divisor": {
            "factors": factors,
            "total_degree": b.total_degree,
            "unmatched": b.unmatched.as_ref().map(MPoly::to_string),
        },
        "ratio_B_over_K": b.ratio_over_canonical(d).as_ref().map(fmt_rat),
        "smooth_critical_relation": smooth.relation(),
        "nonsingular": smooth.nonsingular,
        "pole_budget": budget_json,
    });
    Ok(Report::new(
        "connection",
        json!({"d": d, "k": k, "a": a.as_ref().map(fmt_rat)}),
        results,
        &[
            "connection on C^4 from the linear system sum_k Gamma^k_ij ds_l/dz_k = d^2 s_l/dz_i dz_j",
            "deformed Fermat family s_0 = z_0^d + a z^k, s_i = z_i^d",
            "smoothness: a^d prod k_i^k_i != (-d)^d",
            "Wronskian pole budget p = floor((d+3)/2)",
        ],
    ))
}

pub fn h0p3(m: u32, k: i64, cap: u64, exec: Exec) -> CliResult<Report> {
    let h = h0_sym_cotangent_p3(m, k, cap, exec)?;
    let in_range = m >= 1 && k < 2 * m as i64;
    Ok(Report::new(
        "h0p3",
        json!({"m": m, "k": k, "cap": cap}),
        json!({
            "h0": h,
            "in_vanishing_range": in_range,
            "vanishing_witnessed": in_range && h == 0,
        }),
        &["kernel of the Euler contraction on symmetric m-tensors with coefficients of degree k - m"],
    ))
}
