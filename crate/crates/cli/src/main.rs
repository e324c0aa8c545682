use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use oddfact::atlas::{
    a8_group, a9_group, e1_stabilizer, load_group, monomial_2_6_a7, nonsingular_vector, order_of, order_terms,
    p1_monomial, psp6_wedge, r_derived_t, ree_group, s8_group, sl2_13_levi, sl3_adjoint, sp62_group, standard,
    store_group, su3_adjoint, vector_stabilizer, Family, Group, OrderFormula,
};
use oddfact::engine::action::encode;
use oddfact::engine::{orbit, LineAction, Natural};
use oddfact::orthospace::WittType;
use oddfact::verifier::{
    conjugation_closure_suite, controls, discover_subgroup, fingerprint, parabolic_intersection_suite,
    proof_element_suite, registry_consistency, render, run_cases, special_group_suite, verify, BsgsCache, Mode, Report,
    RunOptions, VerifierError, Workbench, DEFAULT_SEED,
};

const EXIT_MISMATCH: u8 = 1;
const EXIT_ERROR: u8 = 2;
const EXIT_NOT_FOUND: u8 = 3;

#[derive(Parser)]
#[command(
    name = "oddfact",
    version,
    about = "Factorizations of odd-dimensional orthogonal groups, checked by computation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Arithmetic,
    Constructive,
    Both,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Arithmetic => Mode::Arithmetic,
            ModeArg::Constructive => Mode::Constructive,
            ModeArg::Both => Mode::Both,
        }
    }
}

#[derive(Args, Clone)]
struct Common {
    /// Seed for every randomized step.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// BSGS cache directory; the ODDFACT_CACHE variable takes precedence.
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    #[arg(long, default_value_t = 5_000_000)]
    cap_points: usize,
    #[arg(long, default_value_t = 1_000_000)]
    cap_cosets: usize,
}

impl Common {
    fn options(&self, mode: Mode, stretch: bool) -> RunOptions {
        let cache_dir = std::env::var_os("ODDFACT_CACHE")
            .map(PathBuf::from)
            .or_else(|| self.cache_dir.clone());
        RunOptions {
            seed: self.seed,
            mode,
            stretch,
            cap_points: self.cap_points,
            cap_cosets: self.cap_cosets,
            cache_dir,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check the factorization table and write a report.
    Verify {
        /// Rows as a list of numbers and ranges, e.g. "1-4,7".
        #[arg(long, default_value = "1-11")]
        rows: String,
        /// Field orders, e.g. "3,5,9".
        #[arg(long, default_value = "3")]
        q: String,
        /// Restrict Row 1 to this m.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, value_enum, default_value_t = ModeArg::Both)]
        mode: ModeArg,
        /// Also run the Ω13(3) cases.
        #[arg(long)]
        stretch: bool,
        /// Append the negative controls.
        #[arg(long)]
        controls: bool,
        /// Append the negative controls and the property suites.
        #[arg(long)]
        suites: bool,
        /// Report file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Include wall-clock timings (reports are then not reproducible).
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Exact order of a group from its formula, with the formula's terms.
    Orders {
        family: String,
        /// Rank parameter (for the families that take one) followed by q.
        params: Vec<u64>,
    },
    /// Seeded search for a subgroup of Ω_{2m+1}(q) of the given order.
    Discover {
        target: BigUint,
        /// Orders of the random generators, e.g. "13,7".
        #[arg(long)]
        hints: String,
        #[arg(long, default_value_t = 3)]
        m: usize,
        #[arg(long, default_value_t = 3)]
        q: u64,
        #[arg(long, default_value_t = 2000)]
        attempts: usize,
        /// Generator file to write.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Orbit length of a vector or line under a group.
    Orbit {
        /// A built-in group name or a generator file.
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 3)]
        m: usize,
        #[arg(long, default_value_t = 3)]
        q: u64,
        /// Comma-separated coordinates.
        #[arg(long)]
        point: String,
        /// Act on projective points instead of vectors.
        #[arg(long)]
        lines: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Manage the on-disk BSGS cache.
    BsgsCache {
        #[command(subcommand)]
        action: CacheAction,
    },
    /// Write generator files for the built and discovered groups.
    Export {
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand)]
enum CacheAction {
    /// Certify the ambient groups and store them.
    Build {
        #[arg(long, default_value = "3")]
        q: String,
        #[command(flatten)]
        common: Common,
    },
    /// Reload every cacheable group and report hits.
    Check {
        #[arg(long, default_value = "3")]
        q: String,
        #[command(flatten)]
        common: Common,
    },
    Clear {
        #[command(flatten)]
        common: Common,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn parse_list(s: &str) -> Result<Vec<u64>, String> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let bad = || format!("cannot parse '{part}'");
        match part.split_once('-') {
            Some((a, b)) => {
                let (a, b): (u64, u64) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
                out.extend(a..=b);
            }
            None => out.push(part.parse().map_err(|_| bad())?),
        }
    }
    Ok(out)
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), String> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// 2 on any construction error, 1 on any mismatch among reports that ran.
fn exit_code(reports: &[Report]) -> u8 {
    if reports.iter().any(|r| r.construction_error) {
        EXIT_ERROR
    } else if reports.iter().any(|r| !r.skipped() && !r.matches) {
        EXIT_MISMATCH
    } else {
        0
    }
}

fn run(cmd: Command) -> Result<u8, String> {
    match cmd {
        Command::Verify {
            rows,
            q,
            m,
            mode,
            stretch,
            controls: with_controls,
            suites,
            out,
            jobs,
            timings,
            common,
        } => {
            let rows: Vec<u8> = parse_list(&rows)?.into_iter().map(|r| r as u8).collect();
            if let Some(bad) = rows.iter().find(|&&r| !(1..=11).contains(&r)) {
                return Err(format!("no row {bad}"));
            }
            let q_list = parse_list(&q)?;
            let wb = Workbench::new(common.options(mode.into(), stretch));
            let t = Instant::now();
            let mut reports = verify(&wb, &rows, &q_list, m, jobs);
            if with_controls || suites {
                reports.extend(run_cases(&wb, &controls(), jobs));
            }
            if suites {
                reports.push(registry_consistency(&[3, 5, 7, 9, 11, 25, 27], wb.opts.cap_points));
                reports.push(conjugation_closure_suite(&wb, 20));
                reports.push(special_group_suite(&wb, &[(3, 3), (3, 5), (4, 3)]));
                reports.push(parabolic_intersection_suite(&wb, &[(3, 3), (4, 3)]));
                reports.push(proof_element_suite(&[3, 5]));
            }
            emit(&render(&reports, timings), out.as_deref())?;
            summarize(&reports, t);
            Ok(exit_code(&reports))
        }
        Command::Orders { family, params } => orders(&family, &params),
        Command::Discover {
            target,
            hints,
            m,
            q,
            attempts,
            out,
            common,
        } => {
            let hints = parse_list(&hints)?;
            let z_formula = order_of(&OrderFormula::new(Family::OmegaOdd, m as u32, q)).map_err(|e| e.to_string())?;
            if target == BigUint::ZERO || &z_formula % &target != BigUint::ZERO {
                eprintln!("error: {target} does not divide |Ω{}({q})| = {z_formula}", 2 * m + 1);
                return Ok(EXIT_ERROR);
            }
            let wb = Workbench::new(common.options(Mode::Constructive, false));
            let a = wb.ambient(m, q).map_err(|e| e.to_string())?;
            match discover_subgroup(&a.z, &a.zb, &target, &hints, attempts, wb.seed()) {
                Ok(g) => {
                    let path = out.unwrap_or_else(|| PathBuf::from(format!("discovered-{target}.gens")));
                    store_group(&g, &path).map_err(|e| e.to_string())?;
                    let b = g.certify(wb.seed()).map_err(|e| e.to_string())?;
                    let fp = fingerprint(&b, &g.gens);
                    println!("{}", serde_json::to_string_pretty(&fp.to_json()).expect("json"));
                    eprintln!("wrote {}", path.display());
                    Ok(0)
                }
                Err(VerifierError::NotFound(n)) => {
                    eprintln!("no subgroup of order {target} found in {n} attempts");
                    Ok(EXIT_NOT_FOUND)
                }
                Err(e) => Err(e.to_string()),
            }
        }
        Command::Orbit {
            group,
            m,
            q,
            point,
            lines,
            common,
        } => {
            let wb = Workbench::new(common.options(Mode::Constructive, false));
            let g = named_group(&wb, &group, m, q)?;
            let v: Vec<u32> = parse_list(&point)?.into_iter().map(|x| x as u32).collect();
            if v.len() != g.dim {
                return Err(format!(
                    "point has {} coordinates, the group acts on {}",
                    v.len(),
                    g.dim
                ));
            }
            let fq = g.field.order();
            let o = if lines {
                let la = LineAction::new(&g.field, g.dim);
                orbit(&la, &g.gens, la.point(&v), common.cap_points)
            } else {
                orbit(&Natural, &g.gens, encode(fq, &v), common.cap_points)
            }
            .map_err(|e| e.to_string())?;
            println!("{}", o.len());
            Ok(0)
        }
        Command::BsgsCache { action } => cache_command(action),
        Command::Export { out, common } => {
            let wb = Workbench::new(common.options(Mode::Constructive, false));
            fs::create_dir_all(&out).map_err(|e| e.to_string())?;
            for (file, g) in export_groups(&wb).map_err(|e| e.to_string())? {
                store_group(&g, &out.join(format!("{file}.gens"))).map_err(|e| e.to_string())?;
                eprintln!("{file}: {}", g.name);
            }
            Ok(0)
        }
    }
}

fn summarize(reports: &[Report], t: Instant) {
    let ran = reports.iter().filter(|r| !r.skipped()).count();
    let mismatched: Vec<&str> = reports
        .iter()
        .filter(|r| !r.skipped() && !r.matches)
        .map(|r| r.case_id.as_str())
        .collect();
    eprintln!(
        "{} reports, {ran} ran, {} skipped, {} mismatched, {:.1}s",
        reports.len(),
        reports.len() - ran,
        mismatched.len(),
        t.elapsed().as_secs_f64()
    );
    for id in mismatched {
        eprintln!("  mismatch: {id}");
    }
}

fn orders(family: &str, params: &[u64]) -> Result<u8, String> {
    let fam: Family = match family.parse() {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return Ok(EXIT_ERROR);
        }
    };
    let formula = match (fam.has_rank(), params) {
        (true, &[n, q]) => OrderFormula::new(fam, n as u32, q),
        (false, &[q]) => OrderFormula::q_only(fam, q),
        _ => {
            let want = if fam.has_rank() { "a rank and q" } else { "q" };
            eprintln!("error: {fam} takes {want}");
            return Ok(EXIT_ERROR);
        }
    };
    let order = order_of(&formula).map_err(|e| e.to_string())?;
    let terms = order_terms(&formula).map_err(|e| e.to_string())?;
    println!("{order}");
    let text: Vec<String> = terms.iter().map(ToString::to_string).collect();
    println!("= {}", if text.is_empty() { "1".into() } else { text.join(" * ") });
    Ok(0)
}

/// Built-in groups by name, or a generator file.
fn named_group(wb: &Workbench, name: &str, m: usize, q: u64) -> Result<Group, String> {
    let es = |e: VerifierError| e.to_string();
    let ea = |e: oddfact::atlas::AtlasError| e.to_string();
    let space = || standard(m, q).map_err(ea);
    Ok(match name {
        "omega" => wb.ambient(m, q).map_err(es)?.z.clone(),
        "g2" => wb.g2(q).map_err(es)?.group.clone(),
        "sl3" => sl3_adjoint(&standard(3, q).map_err(ea)?).map_err(ea)?,
        "su3" => su3_adjoint(&standard(3, q).map_err(ea)?).map_err(ea)?,
        "ree" => ree_group(&standard(3, q).map_err(ea)?, false).map_err(ea)?,
        "ree-derived" => ree_group(&standard(3, q).map_err(ea)?, true).map_err(ea)?,
        "e1-stabilizer" => e1_stabilizer(&space()?),
        "omega-plus" | "omega-minus" => {
            let s = space()?;
            let kind = if name == "omega-plus" {
                WittType::Plus
            } else {
                WittType::Minus
            };
            vector_stabilizer(&s, &nonsingular_vector(&s, kind).map_err(ea)?).map_err(ea)?
        }
        "psp6" => psp6_wedge(&standard(6, q).map_err(ea)?).map_err(ea)?,
        path => load_group(Path::new(path)).map_err(ea)?,
    })
}

/// Groups written by `export`, keyed by file stem.
fn export_groups(wb: &Workbench) -> Result<Vec<(String, Group)>, VerifierError> {
    let a = wb.ambient(3, 3)?;
    let s = &a.space;
    let mut out = vec![
        ("omega7-3".to_string(), a.z.clone()),
        ("g2-3".to_string(), wb.g2(3)?.group.clone()),
        ("sl3-3-adjoint".to_string(), sl3_adjoint(s)?),
        ("su3-3-adjoint".to_string(), su3_adjoint(s)?),
        ("ree-3".to_string(), ree_group(s, false)?),
        ("e-s-3".to_string(), wb.affine_omega4(3)?.group.clone()),
        ("two-l34".to_string(), (*wb.two_l34()?).clone()),
        ("a8".to_string(), a8_group(s)?),
        ("s8".to_string(), s8_group(s)?),
        ("a9".to_string(), a9_group(s)?),
        ("sp6-2".to_string(), sp62_group(s)?),
        ("2-6-a7".to_string(), monomial_2_6_a7(s)?),
        ("3-5-2-4-a5".to_string(), p1_monomial(s)?),
        ("3-3-sl3".to_string(), r_derived_t(s)?),
    ];
    let s13 = standard(6, 3)?;
    out.push(("psp6-3-on-13".into(), psp6_wedge(&s13)?));
    out.push(("sl2-13-in-sp6-3".into(), sl2_13_levi(&s13, wb.seed())?));
    for (i, g) in wb.s5_candidates()?.iter().enumerate() {
        out.push((format!("e-s5-candidate-{i}"), g.clone()));
    }
    let r10 = wb.row10()?;
    for (i, g) in r10.two_s5.iter().enumerate() {
        out.push((format!("row10-two-s5-{i}"), g.clone()));
    }
    out.push(("row10-eight-a5".into(), r10.eight_a5.clone()));
    out.push(("row10-extraspecial".into(), r10.extraspecial.clone()));
    Ok(out)
}

/// Groups whose BSGS the cache holds: the ambient groups and G2.
fn cacheable(wb: &Workbench, q: u64) -> Result<Vec<Group>, VerifierError> {
    let mut out = vec![wb.ambient(3, q)?.z.clone(), wb.g2(q)?.group.clone()];
    if q == 3 {
        out.push(wb.ambient(4, q)?.z.clone());
    }
    Ok(out)
}

fn cache_command(action: CacheAction) -> Result<u8, String> {
    let open = |common: &Common| {
        let opts = common.options(Mode::Constructive, false);
        let dir = opts
            .cache_dir
            .clone()
            .ok_or("no cache directory: pass --cache-dir or set ODDFACT_CACHE")?;
        Ok::<_, String>((BsgsCache::new(dir), opts))
    };
    match action {
        CacheAction::Build { q, common } => {
            let (cache, opts) = open(&common)?;
            let wb = Workbench::new(opts);
            for q in parse_list(&q)? {
                for g in cacheable(&wb, q).map_err(|e| e.to_string())? {
                    let (b, hit) = cache.certify(&g, wb.seed()).map_err(|e| e.to_string())?;
                    println!(
                        "{}: order {} ({})",
                        g.name,
                        b.order(),
                        if hit { "already cached" } else { "stored" }
                    );
                }
            }
            Ok(0)
        }
        CacheAction::Check { q, common } => {
            let (cache, opts) = open(&common)?;
            let wb = Workbench::new(opts);
            let mut missing = 0;
            for q in parse_list(&q)? {
                for g in cacheable(&wb, q).map_err(|e| e.to_string())? {
                    match cache.load(&g) {
                        Some(b) => println!("{}: hit, order {}", g.name, b.order()),
                        None => {
                            missing += 1;
                            println!("{}: miss", g.name);
                        }
                    }
                }
            }
            Ok(if missing == 0 { 0 } else { EXIT_MISMATCH })
        }
        CacheAction::Clear { common } => {
            let (cache, _) = open(&common)?;
            let n = cache.clear().map_err(|e| e.to_string())?;
            println!("removed {n} entries from {}", cache.dir().display());
            Ok(0)
        }
    }
}
