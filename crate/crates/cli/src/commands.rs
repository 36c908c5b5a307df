use std::fmt::Write as _;

use rowmotion_core::lab::{
    self, antichain_experiment, cesaro_average, check_homomesy_exhaustive, default_max_steps, eval_stat, homomesy_span,
    infinite_order_experiment, orbit_length, resolved_plan, AntichainMode, HomomesyReport, Setting, State, Statistic,
    Verdict,
};
use rowmotion_core::rational::{self, Q};
use rowmotion_core::verify::{self, SuiteReport, VerifyConfig};
use rowmotion_core::{Birational, LabeledArray, Poset, PosetSpec, ToggleAlgebra, TogglePlan, Tropical, VERSION};
use serde::Serialize;

use crate::input::{parse_init, parse_map, parse_stat};
use crate::{
    ExperimentArgs, ExperimentName, Failure, Format, OrbitsArgs, Output, Shape, SpanArgs, TrajectoryArgs, VerifyArgs,
};

fn poset(shape: &Shape) -> Result<Poset, Failure> {
    Poset::rect(shape.a, shape.b).map_err(Failure::from_input)
}

fn shape_label(shape: &Shape) -> String {
    format!("[{}]×[{}]", shape.a, shape.b)
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn csv_table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String, Failure> {
    let io = |e: csv::Error| Failure::Usage(format!("csv: {e}"));
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(io)?;
    for row in rows {
        w.write_record(&row).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Usage(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn emit(output: &Output, body: String) -> Result<(), Failure> {
    match &output.out {
        Some(path) => {
            std::fs::write(path, body).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
        }
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn homomesy_text(label: &str, r: &HomomesyReport) -> String {
    let mut s = String::new();
    let agg = format!("{:?}", r.aggregate).to_lowercase();
    writeln!(
        s,
        "{label} {} ({}), statistic {} ({agg})",
        r.map,
        r.setting.name(),
        r.statistic
    )
    .unwrap();
    if let (Some(seed), Some(n)) = (r.seed, r.samples) {
        writeln!(s, "{n} samples, seed {seed}, {} resampled", r.resampled).unwrap();
    }
    let unit = if r.samples.is_some() { "sample" } else { "orbit" };
    for rec in &r.records {
        let values: Vec<String> = rec.values.iter().map(rational::format).collect();
        writeln!(
            s,
            "{unit} {}: length {}, {agg} {}, values {}, start {}",
            rec.id,
            rec.length,
            rational::format(&rec.aggregate),
            values.join(" "),
            rec.start
        )
        .unwrap();
    }
    match &r.verdict {
        Verdict::Homomesic { constant } => writeln!(s, "homomesic: constant {}", rational::format(constant)).unwrap(),
        Verdict::NotHomomesic {
            first,
            second,
            first_value,
            second_value,
        } => writeln!(
            s,
            "not homomesic: {unit} {first} gives {}, {unit} {second} gives {}",
            rational::format(first_value),
            rational::format(second_value)
        )
        .unwrap(),
    }
    s
}

fn homomesy_body(format: Format, label: &str, r: &HomomesyReport) -> Result<String, Failure> {
    Ok(match format {
        Format::Json => {
            let mut s = r.to_json();
            s.push('\n');
            s
        }
        Format::Csv => r.to_csv().map_err(Failure::from_run)?,
        Format::Text => homomesy_text(label, r),
    })
}

#[derive(Serialize)]
struct ArrayOrbitReport {
    version: String,
    poset: PosetSpec,
    map: String,
    setting: Setting,
    statistic: String,
    bound: usize,
    period: Option<usize>,
    states: Vec<Vec<String>>,
    #[serde(with = "rational::vec")]
    values: Vec<Q>,
}

pub fn orbits(args: OrbitsArgs) -> Result<(), Failure> {
    let p = poset(&args.shape)?;
    let plan = parse_map(&p, &args.map)?;
    let stat = parse_stat(&p, &args.stat)?;
    let setting = Setting::from(args.setting);
    let label = shape_label(&args.shape);
    if setting == Setting::Combinatorial {
        if args.init.is_some() || args.steps.is_some() {
            return Err(Failure::Usage(
                "--init and --steps apply to the continuous settings".into(),
            ));
        }
        let report = check_homomesy_exhaustive(&p, &plan, &stat, args.max_states).map_err(Failure::from_run)?;
        return emit(&args.output, homomesy_body(args.output.format, &label, &report)?);
    }
    let init = args
        .init
        .as_deref()
        .ok_or_else(|| Failure::Usage(format!("--init is required in the {} setting", setting.name())))?;
    let f = parse_init(&p, setting, init)?;
    let bound = args.steps.unwrap_or_else(|| default_max_steps(&p, &plan));
    let run = match setting {
        Setting::Birational => lab::array_orbit(Birational, &p, &plan, &f, bound),
        _ => lab::array_orbit(Tropical, &p, &plan, &f, bound),
    }
    .map_err(Failure::from_run)?;
    let values = run
        .states
        .iter()
        .map(|s| eval_stat(&stat, State::Array(s), setting))
        .collect::<rowmotion_core::Result<Vec<_>>>()
        .map_err(Failure::from_run)?;
    let report = ArrayOrbitReport {
        version: VERSION.into(),
        poset: p.spec(),
        map: plan.describe(&p),
        setting,
        statistic: stat.name.clone(),
        bound,
        period: run.period,
        states: run.states.iter().map(LabeledArray::formatted).collect(),
        values,
    };
    let body = match args.output.format {
        Format::Json => json(&report),
        Format::Csv => csv_table(
            &["orbit_id", "step", "statistic", "value"],
            report
                .values
                .iter()
                .enumerate()
                .map(|(k, v)| vec!["0".into(), k.to_string(), report.statistic.clone(), rational::format(v)]),
        )?,
        Format::Text => {
            let mut s = String::new();
            writeln!(
                s,
                "{label} {} ({}), statistic {}",
                report.map,
                setting.name(),
                report.statistic
            )
            .unwrap();
            for (k, (state, v)) in report.states.iter().zip(&report.values).enumerate() {
                writeln!(
                    s,
                    "{k}: ({})  {} = {}",
                    state.join(", "),
                    report.statistic,
                    rational::format(v)
                )
                .unwrap();
            }
            match report.period {
                Some(n) => writeln!(s, "period {n}").unwrap(),
                None => writeln!(s, "no return within {bound} steps").unwrap(),
            }
            s
        }
    };
    emit(&args.output, body)
}

fn verify_text(label: &str, r: &SuiteReport) -> String {
    let mut s = String::new();
    for c in &r.checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        let ok = c.cases.iter().filter(|k| k.passed).count();
        writeln!(
            s,
            "{status} {} {label}: {} ({ok}/{} cases)",
            c.id,
            c.summary,
            c.cases.len()
        )
        .unwrap();
        if let Some(f) = c.first_failure() {
            match &f.expected {
                Some(e) => writeln!(s, "  first failure: {}: {} (expected {e})", f.label, f.value).unwrap(),
                None => writeln!(s, "  first failure: {}", f.label).unwrap(),
            }
        }
    }
    let failed = r.checks.iter().filter(|c| !c.passed).count();
    writeln!(s, "{} checks, {failed} failed, seed {}", r.checks.len(), r.seed).unwrap();
    s
}

pub fn verify(args: VerifyArgs) -> Result<(), Failure> {
    if args.setting.is_some() && !["order-n", "opposite-pairs", "all"].contains(&args.id.as_str()) {
        return Err(Failure::Usage(format!("--setting does not apply to {}", args.id)));
    }
    if args.samples == Some(0) {
        return Err(Failure::Usage("--samples must be at least 1".into()));
    }
    let cfg = VerifyConfig {
        a: args.shape.a,
        b: args.shape.b,
        setting: args.setting.map(Setting::from),
        samples: args.samples,
        seed: args.seed,
        max_states: args.max_states,
    };
    let report = verify::verify(&args.id, &cfg).map_err(Failure::from_run)?;
    let body = match args.output.format {
        Format::Json => json(&report),
        Format::Csv => csv_table(
            &["check", "case", "value", "expected", "passed"],
            report.checks.iter().flat_map(|c| {
                c.cases.iter().map(|k| {
                    vec![
                        c.id.clone(),
                        k.label.clone(),
                        k.value.clone(),
                        k.expected.clone().unwrap_or_default(),
                        k.passed.to_string(),
                    ]
                })
            }),
        )?,
        Format::Text => verify_text(&shape_label(&args.shape), &report),
    };
    emit(&args.output, body)?;
    match report.checks.iter().find(|c| !c.passed) {
        None => Ok(()),
        Some(c) => {
            let why = c
                .first_failure()
                .map(|f| format!(": {} = {}", f.label, f.value))
                .unwrap_or_default();
            Err(Failure::Check(format!("{} failed{why}", c.id)))
        }
    }
}

pub fn span(args: SpanArgs) -> Result<(), Failure> {
    let p = poset(&args.shape)?;
    let plan = parse_map(&p, &args.map)?;
    let r = homomesy_span(&p, &plan, args.max_states).map_err(Failure::from_run)?;
    let row = |v: &[Q]| v.iter().map(rational::format).collect::<Vec<_>>().join(", ");
    let body = match args.output.format {
        Format::Json => json(&r),
        Format::Csv => {
            let mut rows = Vec::new();
            for (kind, basis) in [("computed", &r.basis), ("predicted", &r.predicted_basis)] {
                for (k, v) in basis.iter().enumerate() {
                    for x in p.elements() {
                        rows.push(vec![
                            kind.into(),
                            k.to_string(),
                            p.label(x),
                            rational::format(&v[x.index()]),
                        ]);
                    }
                }
            }
            csv_table(&["basis", "vector", "element", "coefficient"], rows)?
        }
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "{} {}: {} orbits", shape_label(&args.shape), r.map, r.orbits).unwrap();
            writeln!(s, "dimension {}", r.dimension).unwrap();
            for v in &r.basis {
                writeln!(s, "  ({})", row(v)).unwrap();
            }
            writeln!(
                s,
                "predicted dimension {} (files and opposite pairs)",
                r.predicted_dimension
            )
            .unwrap();
            writeln!(
                s,
                "verdict {}",
                serde_json::to_value(r.verdict).unwrap().as_str().unwrap()
            )
            .unwrap();
            s
        }
    };
    emit(&args.output, body)
}

#[derive(Serialize)]
struct TrajectoryStep {
    step: usize,
    state: Vec<String>,
    #[serde(with = "rational")]
    value: Q,
}

#[derive(Serialize)]
struct TrajectoryReport {
    version: String,
    poset: PosetSpec,
    map: String,
    setting: Setting,
    statistic: String,
    steps: Vec<TrajectoryStep>,
}

fn run_trajectory<A: ToggleAlgebra>(
    alg: A,
    p: &Poset,
    plan: &TogglePlan,
    f: &LabeledArray,
    steps: usize,
    stat: &Statistic,
    setting: Setting,
) -> Result<Vec<TrajectoryStep>, Failure> {
    let mut g = f.clone();
    let mut out = Vec::with_capacity(steps + 1);
    for step in 0..=steps {
        if step > 0 {
            g = rowmotion_core::dynamics::apply_plan(alg, p, &g, plan).map_err(|e| match e {
                rowmotion_core::Error::Singular { .. } => Failure::Check(format!("step {step}: {e}")),
                _ => Failure::from_run(e),
            })?;
        }
        out.push(TrajectoryStep {
            step,
            state: g.formatted(),
            value: eval_stat(stat, State::Array(&g), setting).map_err(Failure::from_run)?,
        });
    }
    Ok(out)
}

pub fn trajectory(args: TrajectoryArgs) -> Result<(), Failure> {
    let p = poset(&args.shape)?;
    let plan = parse_map(&p, &args.map)?;
    let stat = parse_stat(&p, &args.stat)?;
    let setting = Setting::from(args.setting);
    let f = parse_init(&p, setting, &args.init)?;
    let steps = args.steps.unwrap_or(args.shape.a + args.shape.b);
    let states = match setting {
        Setting::Birational => run_trajectory(Birational, &p, &plan, &f, steps, &stat, setting)?,
        _ => run_trajectory(Tropical, &p, &plan, &f, steps, &stat, setting)?,
    };
    let report = TrajectoryReport {
        version: VERSION.into(),
        poset: p.spec(),
        map: plan.describe(&p),
        setting,
        statistic: stat.name.clone(),
        steps: states,
    };
    let body = match args.output.format {
        Format::Json => json(&report),
        Format::Csv => csv_table(
            &["orbit_id", "step", "statistic", "value"],
            report.steps.iter().map(|s| {
                vec![
                    "0".into(),
                    s.step.to_string(),
                    report.statistic.clone(),
                    rational::format(&s.value),
                ]
            }),
        )?,
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "{} {} ({})", shape_label(&args.shape), report.map, setting.name()).unwrap();
            for st in &report.steps {
                writeln!(
                    s,
                    "{}: ({})  {} = {}",
                    st.step,
                    st.state.join(", "),
                    report.statistic,
                    rational::format(&st.value)
                )
                .unwrap();
            }
            s
        }
    };
    emit(&args.output, body)
}

fn tropical_setting(arg: Option<crate::SettingArg>) -> Result<Setting, Failure> {
    match arg.map(Setting::from).unwrap_or(Setting::PlUnit) {
        s @ (Setting::PlUnit | Setting::PlHomog) => Ok(s),
        s => Err(Failure::Usage(format!(
            "this experiment is piecewise-linear; {} is not allowed",
            s.name()
        ))),
    }
}

pub fn experiment(args: ExperimentArgs) -> Result<(), Failure> {
    let p = poset(&args.shape)?;
    let label = shape_label(&args.shape);
    let plan = match &args.map {
        Some(m) => parse_map(&p, m)?,
        None if args.name == ExperimentName::Antichain => TogglePlan::Rowmotion,
        None => resolved_plan(&p).map_err(Failure::from_input)?,
    };
    let start = |setting| {
        let init = args
            .init
            .as_deref()
            .ok_or_else(|| Failure::Usage("--init is required for this experiment".into()))?;
        parse_init(&p, setting, init)
    };
    let format = args.output.format;
    let body = match args.name {
        ExperimentName::InfiniteOrder => {
            let r = infinite_order_experiment(&p, &plan, args.d, 4..=args.d).map_err(Failure::from_run)?;
            let body = match format {
                Format::Json => json(&r),
                Format::Csv => csv_table(
                    &["k", "matches", "first_mismatch"],
                    r.rows.iter().map(|row| {
                        vec![
                            row.k.to_string(),
                            row.matches.to_string(),
                            row.first_mismatch.map(|m| m.to_string()).unwrap_or_default(),
                        ]
                    }),
                )?,
                Format::Text => {
                    let ok = r.rows.iter().filter(|row| row.matches).count();
                    let mut s = format!(
                        "{label} {}, d = {}: {ok}/{} starts match all 12 steps\n",
                        r.map,
                        r.d,
                        r.rows.len()
                    );
                    for row in r.rows.iter().filter(|row| !row.matches) {
                        writeln!(
                            s,
                            "  k = {}: first mismatch at step {}",
                            row.k,
                            row.first_mismatch.unwrap()
                        )
                        .unwrap();
                    }
                    s
                }
            };
            emit(&args.output, body)?;
            return if r.all_match {
                Ok(())
            } else {
                Err(Failure::Check("the twelve-step table was not reproduced".into()))
            };
        }
        ExperimentName::OrbitLength => {
            let f = start(tropical_setting(args.setting)?)?;
            let r = orbit_length(&p, &plan, &f, args.horizon).map_err(Failure::from_run)?;
            let length = r.length.map(|n| n.to_string()).unwrap_or_default();
            match format {
                Format::Json => json(&r),
                Format::Csv => csv_table(&["start", "length"], [vec![r.start.join(" "), length]])?,
                Format::Text => match r.length {
                    Some(n) => format!(
                        "{label} {}: ({}) returns after {n} steps\n",
                        plan.describe(&p),
                        r.start.join(", ")
                    ),
                    None => format!(
                        "{label} {}: ({}) does not return within {} steps\n",
                        plan.describe(&p),
                        r.start.join(", "),
                        args.horizon
                    ),
                },
            }
        }
        ExperimentName::Cesaro => {
            let f = start(tropical_setting(args.setting)?)?;
            let stat = parse_stat(&p, args.stat.as_deref().unwrap_or("custom:1,-1,-1,1"))?;
            let r = cesaro_average(&p, &plan, &f, &stat, args.horizon).map_err(Failure::from_run)?;
            match format {
                Format::Json => json(&r),
                Format::Csv => csv_table(
                    &["steps", "average"],
                    r.checkpoints
                        .iter()
                        .map(|c| vec![c.steps.to_string(), rational::format(&c.average)])
                        .chain([vec![r.steps.to_string(), rational::format(&r.average)]]),
                )?,
                Format::Text => {
                    let mut s = format!("{label} {}, statistic {}\n", r.map, r.statistic);
                    for c in &r.checkpoints {
                        writeln!(s, "  after {} steps: {}", c.steps, rational::format(&c.average)).unwrap();
                    }
                    match r.period {
                        Some(n) => writeln!(
                            s,
                            "orbit closes after {n} steps; average {}",
                            rational::format(&r.average)
                        )
                        .unwrap(),
                        None => writeln!(
                            s,
                            "no return within {} steps; running average {}",
                            r.horizon,
                            rational::format(&r.average)
                        )
                        .unwrap(),
                    }
                    s
                }
            }
        }
        ExperimentName::Antichain => {
            let mode = match args.setting.map(Setting::from).unwrap_or(Setting::Combinatorial) {
                Setting::Combinatorial => AntichainMode::Combinatorial,
                Setting::PlUnit => AntichainMode::Pl,
                Setting::Birational => AntichainMode::Birational,
                Setting::PlHomog => {
                    return Err(Failure::Usage(
                        "the antichain experiment takes combinatorial, pl-unit or birational".into(),
                    ))
                }
            };
            if args.samples == 0 {
                return Err(Failure::Usage("--samples must be at least 1".into()));
            }
            let r =
                antichain_experiment(&p, mode, args.samples, args.seed, args.max_states).map_err(Failure::from_run)?;
            homomesy_body(format, &label, &r)?
        }
    };
    emit(&args.output, body)
}
