use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::Serialize;
use tsip::backlund::{rs_function, Level};
use tsip::families::{instantiate_named, list_families, Branch, Family, FamilyInstance, Params};
use tsip::groundstate::{solve_first, solve_instance, solve_second, FirstCategoryInput, GroundSolution, SecondCategoryInput};
use tsip::ratfun::{rational_to_f64, rational_to_wire, Rational, RationalFunction};
use tsip::verify::{classify, full_report, ClassAssignment, GridOverrides, VerificationReport};
use tsip::wavefun::{assemble, ClosedFormWavefunction};

use crate::args::{
    BranchArg, ClassifyArgs, Format, GroundArgs, InstanceArgs, LevelArgs, OutputArgs, VerifyArgs, WavefunctionArgs,
};

/// Largest level index any command accepts. Rosen-Morse I has no last bound
/// state, so some cap is needed.
pub const MAX_LEVEL: usize = 64;

const RAW_KEYS: [&str; 5] = ["lambda2", "lambda1", "lambda0", "mu2", "alpha"];

fn instance(args: &InstanceArgs) -> Result<FamilyInstance> {
    build_instance(&args.family, &args.params)
}

fn build_instance(family: &str, params: &[String]) -> Result<FamilyInstance> {
    let params = Params::parse_assignments(params)?;
    Ok(instantiate_named(family, &params)?)
}

fn check_level(n: usize) -> Result<()> {
    if n > MAX_LEVEL {
        bail!("n = {n} exceeds the limit of {MAX_LEVEL}");
    }
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn emit(out: &OutputArgs, body: &str) -> Result<()> {
    match &out.out {
        Some(path) => fs::write(path, body).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(body.as_bytes())?;
            Ok(stdout.flush()?)
        }
    }
}

fn json_only(out: &OutputArgs, command: &str) -> Result<()> {
    if out.format == Format::Csv {
        bail!("`{command}` has no CSV form; use --format json");
    }
    Ok(())
}

pub fn list(out: &OutputArgs) -> Result<()> {
    json_only(out, "list")?;
    emit(out, &to_json(&list_families())?)
}

#[derive(Serialize)]
struct SpectrumRow {
    n: usize,
    /// Exact value as `p/q`.
    energy: String,
    value: f64,
}

#[derive(Serialize)]
struct Spectrum<'a> {
    family: Family,
    params: &'a Params,
    levels: Vec<SpectrumRow>,
}

pub fn spectrum(args: &LevelArgs) -> Result<()> {
    check_level(args.n)?;
    let inst = instance(&args.instance)?;
    let mut levels = Vec::with_capacity(args.n + 1);
    for n in 0..=args.n {
        let e: Rational = inst.energy(n)?;
        levels.push(SpectrumRow {
            n,
            energy: rational_to_wire(&e),
            value: rational_to_f64(&e),
        });
    }
    let body = match args.output.format {
        Format::Json => to_json(&Spectrum {
            family: inst.family(),
            params: inst.params(),
            levels,
        })?,
        Format::Csv => {
            let mut s = String::from("n,energy,value\n");
            for r in &levels {
                writeln!(s, "{},{},{}", r.n, r.energy, r.value)?;
            }
            s
        }
    };
    emit(&args.output, &body)
}

#[derive(Serialize)]
struct RsOutput<'a> {
    family: Family,
    params: &'a Params,
    #[serde(flatten)]
    level: &'a Level,
}

pub fn rs(args: &LevelArgs) -> Result<()> {
    json_only(&args.output, "rs")?;
    check_level(args.n)?;
    let inst = instance(&args.instance)?;
    let level = rs_function(&inst, args.n)?;
    emit(
        &args.output,
        &to_json(&RsOutput {
            family: inst.family(),
            params: inst.params(),
            level: &level,
        })?,
    )
}

#[derive(Serialize)]
struct Descriptor<'a> {
    energy: String,
    csv: String,
    samples: usize,
    x_min: f64,
    x_max: f64,
    #[serde(flatten)]
    wavefunction: &'a ClosedFormWavefunction,
}

/// `morse_A2_B1_alpha1_n1`; `p/q` becomes `pdq` and a minus sign `m`.
fn file_stem(inst: &FamilyInstance, n: usize) -> String {
    let mut stem = inst.name().to_string();
    for (k, v) in inst.params().iter() {
        let v = rational_to_wire(v);
        let v = v.strip_suffix("/1").unwrap_or(&v).replace('/', "d").replace('-', "m");
        write!(stem, "_{k}{v}").expect("writing to a String");
    }
    write!(stem, "_n{n}").expect("writing to a String");
    stem
}

pub fn wavefunction(args: &WavefunctionArgs) -> Result<Vec<PathBuf>> {
    check_level(args.n)?;
    if args.points < 2 {
        bail!("--points must be at least 2");
    }
    let inst = instance(&args.instance)?;
    let level = rs_function(&inst, args.n)?;
    let cf = assemble(&level, &inst)?.normalize()?;
    let (lo, hi) = cf.window()?;
    let (x_min, x_max) = (args.x_min.unwrap_or(lo), args.x_max.unwrap_or(hi));
    let domain = inst.cov().x_domain;
    if !(x_min < x_max) || !domain.contains(x_min) || !domain.contains(x_max) {
        bail!("sampling interval [{x_min}, {x_max}] must be increasing and inside the x-domain");
    }

    let mut csv = String::from("x,psi\n");
    for i in 0..args.points {
        let x = x_min + (x_max - x_min) * i as f64 / (args.points - 1) as f64;
        writeln!(csv, "{x},{}", cf.eval_psi(x)?)?;
    }
    fs::create_dir_all(&args.out).with_context(|| format!("creating {}", args.out.display()))?;
    let stem = file_stem(&inst, args.n);
    let csv_path = args.out.join(format!("{stem}.csv"));
    let json_path = args.out.join(format!("{stem}.json"));
    let descriptor = Descriptor {
        energy: rational_to_wire(&level.energy),
        csv: format!("{stem}.csv"),
        samples: args.points,
        x_min,
        x_max,
        wavefunction: &cf,
    };
    write_file(&csv_path, &csv)?;
    write_file(&json_path, &to_json(&descriptor)?)?;
    Ok(vec![csv_path, json_path])
}

fn write_file(path: &Path, body: &str) -> Result<()> {
    fs::write(path, body).with_context(|| format!("writing {}", path.display()))
}

#[derive(Serialize)]
struct GroundOutput<'a> {
    #[serde(skip_serializing_if = "Option::is_none")]
    family: Option<Family>,
    params: &'a Params,
    solution: GroundSolution,
    /// `b₋₁/y + b₀ + b₁·y` when every coefficient is rational.
    #[serde(skip_serializing_if = "Option::is_none")]
    w0: Option<RationalFunction>,
    /// Whether the solver reproduces the catalog superpotential.
    #[serde(skip_serializing_if = "Option::is_none")]
    matches_catalog: Option<bool>,
}

pub fn ground(args: &GroundArgs) -> Result<()> {
    json_only(&args.output, "ground")?;
    let out = if args.raw {
        let p = Params::parse_assignments(&args.params)?;
        if let Some((k, _)) = p.iter().find(|(k, _)| !RAW_KEYS.contains(k)) {
            bail!("unknown raw coefficient {k:?}; expected one of {}", RAW_KEYS.join(", "));
        }
        let req = |k: &str| p.get(k).cloned().with_context(|| format!("missing raw coefficient {k}"));
        let zero = Rational::from_integer(0.into());
        let branch = match args.branch {
            BranchArg::Plus => Branch::Plus,
            BranchArg::Minus => Branch::Minus,
        };
        let solution = match p.get("mu2") {
            Some(mu2) => {
                if p.get("lambda1").is_some_and(|l| *l != zero) {
                    bail!("lambda1 must vanish when mu2 is given");
                }
                solve_second(&SecondCategoryInput {
                    lambda2: req("lambda2")?,
                    mu2: mu2.clone(),
                    lambda0: req("lambda0")?,
                    alpha: req("alpha")?,
                    branch,
                })?
            }
            None => solve_first(&FirstCategoryInput {
                lambda2: req("lambda2")?,
                lambda1: p.get("lambda1").cloned().unwrap_or(zero),
                lambda0: req("lambda0")?,
                alpha: req("alpha")?,
                branch,
            })?,
        };
        let w0 = solution.w0();
        to_json(&GroundOutput {
            family: None,
            params: &p,
            solution,
            w0,
            matches_catalog: None,
        })?
    } else {
        let family = args.family.as_deref().expect("clap requires --family without --raw");
        let inst = build_instance(family, &args.params)?;
        let solution = solve_instance(&inst)?;
        let w0 = solution.w0();
        let matches_catalog = w0.as_ref().map(|w| w == inst.w0());
        to_json(&GroundOutput {
            family: Some(inst.family()),
            params: inst.params(),
            solution,
            w0,
            matches_catalog,
        })?
    };
    emit(&args.output, &out)
}

/// Runs the reports and writes them; returns whether all passed.
pub fn verify(args: &VerifyArgs) -> Result<bool> {
    json_only(&args.output, "verify")?;
    let overrides = GridOverrides {
        points: args.grid.points,
        x_min: args.grid.x_min,
        x_max: args.grid.x_max,
    };
    let (body, passed) = if args.all {
        // one thread per family; results keep catalog order
        let reports: Vec<VerificationReport> = std::thread::scope(|s| {
            let handles: Vec<_> = Family::ALL
                .into_iter()
                .map(|f| {
                    s.spawn(move || {
                        let inst = tsip::families::instantiate(f, &f.descriptor().example)
                            .expect("catalog examples are admissible");
                        full_report(&inst, args.n, overrides)
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("verification thread panicked"))
                .collect()
        });
        let passed = reports.iter().all(|r| r.passed);
        (to_json(&reports)?, passed)
    } else {
        let family = args.family.as_deref().expect("clap requires --family without --all");
        let inst = build_instance(family, &args.params)?;
        let report = full_report(&inst, args.n, overrides);
        (to_json(&report)?, report.passed)
    };
    emit(&args.output, &body)?;
    Ok(passed)
}

#[derive(Serialize)]
struct ClassifyOutput<'a> {
    family: Family,
    params: &'a Params,
    category: tsip::families::Category,
    assignment: ClassAssignment,
}

pub fn classify_cmd(args: &ClassifyArgs) -> Result<()> {
    json_only(&args.output, "classify")?;
    let inst = instance(&args.instance)?;
    let assignment = classify(&inst)?;
    emit(
        &args.output,
        &to_json(&ClassifyOutput {
            family: inst.family(),
            params: inst.params(),
            category: inst.category(),
            assignment,
        })?,
    )
}
