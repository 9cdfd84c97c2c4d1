use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use pentahull::complex::{Patch, PentComplex, VertexId};
use pentahull::hull::{d_prime, make_point, Generator, HullPoint};
use pentahull::iso::{anchored_isomorphic, ball_census, find_occurrences, MarkPolicy};
use pentahull::metric::{ball, boundary_growth, hole_count};
use pentahull::subdivision::{alt_subdivide, subdivide, try_desubdivide, RuleTable, SupertileCache};
use pentahull::verify::{run_suite, SuiteOptions, DEFAULT_SEED};
use pentahull::{export, verify};

#[derive(Parser)]
#[command(name = "pentahull", version, about = "Decorated pentagonal supertiles, balls, census and hull points")]
struct Cli {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write the supertile K_n.
    Supertile {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Subdivide a complex once (variant 0 is the standard rule).
    Subdivide {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        variant: u8,
    },
    /// Undo one subdivision around an anchor.
    Desubdivide {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        anchor: VertexId,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cut out the certified ball B(center, radius).
    Ball {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        center: VertexId,
        #[arg(long)]
        radius: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Hole count of balls in a supertile; with --scan, the first center whose ball has holes.
    Holes {
        #[arg(long)]
        radius: u32,
        #[arg(long, default_value_t = 7)]
        supertile: u32,
        #[arg(long)]
        center: Option<VertexId>,
        #[arg(long)]
        scan: bool,
    },
    /// Boundary growth of balls up to radius max-n at sampled centers.
    SweepGrowth {
        #[arg(long)]
        max_n: u32,
        #[arg(long, default_value_t = 7)]
        supertile: u32,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Ball types of one radius over a supertile.
    Census {
        #[arg(long)]
        radius: u32,
        #[arg(long)]
        supertile: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Anchored isomorphism between two pointed complexes.
    Iso {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        va: VertexId,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        vb: VertexId,
        /// Exit with 1 when the complexes are not isomorphic.
        #[arg(long)]
        expect_iso: bool,
    },
    /// Anchors at which a pointed patch occurs in a complex.
    Occurs {
        #[arg(long)]
        needle: PathBuf,
        #[arg(long)]
        anchor: VertexId,
        #[arg(long)]
        haystack: PathBuf,
        /// Compare faces and labels only, not rim data.
        #[arg(long)]
        ignore_marks: bool,
    },
    /// Realize a hull point: fixed3, fixed4 or supertile:N:VERTEX.
    HullPoint {
        #[arg(long)]
        gen: String,
        #[arg(long)]
        radius: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// d' between two hull points.
    Dprime {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Hull property suites.
    HullVerify {
        #[arg(long, value_enum)]
        suite: HullSuite,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Property suites over supertiles.
    Verify {
        #[arg(long)]
        suite: String,
        /// Supertile level, where the suite uses one.
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Render a complex.
    Export {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum HullSuite {
    Ultrametric,
    Fixedpoint,
    Injectivity,
    Continuity,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Svg,
    Json,
}

enum Failure {
    /// Bad input or arguments: exit 2.
    Usage(String),
    /// The requested property does not hold: exit 1.
    Domain(String),
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn read_complex(p: &Path) -> Result<PentComplex, Failure> {
    let bytes = fs::read(p).map_err(|e| usage(format!("{}: {e}", p.display())))?;
    let c = PentComplex::from_json(&bytes).map_err(|e| usage(format!("{}: {e}", p.display())))?;
    let report = c.validate();
    if !report.is_structurally_ok() {
        return Err(usage(format!("{}: {report}", p.display())));
    }
    Ok(c)
}

fn read_point(p: &Path) -> Result<HullPoint, Failure> {
    let bytes = fs::read(p).map_err(|e| usage(format!("{}: {e}", p.display())))?;
    HullPoint::from_json(&bytes).map_err(|e| usage(format!("{}: {e}", p.display())))
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, bytes).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(bytes).map_err(usage)
        }
    }
}

/// Pretty JSON on stdout; a closed pipe is not an error.
fn print_json(v: serde_json::Value) {
    use std::io::Write;
    let mut text = serde_json::to_string_pretty(&v).expect("json");
    text.push('\n');
    let _ = std::io::stdout().write_all(text.as_bytes());
}

fn check_vertex(c: &PentComplex, v: VertexId) -> Result<(), Failure> {
    if (v as usize) < c.vertex_count() {
        Ok(())
    } else {
        Err(usage(format!("vertex {v} out of range")))
    }
}

fn parse_generator(s: &str) -> Result<Generator, Failure> {
    match s {
        "fixed3" => Ok(Generator::FixedPointDeg3),
        "fixed4" => Ok(Generator::FixedPointDeg4),
        _ => {
            let parts: Vec<&str> = s.split(':').collect();
            match parts.as_slice() {
                ["supertile", n, v] => Ok(Generator::Supertile {
                    level: n.parse().map_err(usage)?,
                    vertex: v.parse().map_err(usage)?,
                }),
                _ => Err(usage(format!("unknown generator {s:?}"))),
            }
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let cache = SupertileCache::shared();
    match cli.cmd {
        Cmd::Supertile { n, out } => {
            let k = cache.get(n).map_err(usage)?;
            emit(out.as_deref(), &k.to_json())
        }
        Cmd::Subdivide { input, out, variant } => {
            let c = read_complex(&input)?;
            let sub = if variant == 0 { subdivide(&c) } else { alt_subdivide(&c, variant) }.map_err(usage)?;
            emit(out.as_deref(), &sub.to_json())
        }
        Cmd::Desubdivide { input, anchor, out } => {
            let c = read_complex(&input)?;
            check_vertex(&c, anchor)?;
            match try_desubdivide(&c, anchor, &RuleTable::OMEGA) {
                Some((parent, w)) => {
                    eprintln!("{}", json!({"anchor": w}));
                    emit(out.as_deref(), &parent.to_json())
                }
                None => Err(Failure::Domain(format!("no flower partition around vertex {anchor}"))),
            }
        }
        Cmd::Ball {
            input,
            center,
            radius,
            out,
        } => {
            let c = read_complex(&input)?;
            check_vertex(&c, center)?;
            let b = ball(&c, center, radius).map_err(|e| Failure::Domain(e.to_string()))?;
            let ex = b.patch(&c).extract().map_err(|e| Failure::Domain(e.to_string()))?;
            eprintln!("{}", json!({"faces": b.faces.len(), "center": ex.vertex_id(center)}));
            emit(out.as_deref(), &ex.complex.to_json())
        }
        Cmd::Holes {
            radius,
            supertile,
            center,
            scan,
        } => {
            if scan {
                let r = verify::holes(cache, supertile, radius).map_err(usage)?;
                print_json(serde_json::to_value(&r).expect("json"));
                return if r.passed { Ok(()) } else { Err(Failure::Domain("no ball with holes found".into())) };
            }
            let v = center.ok_or_else(|| usage("--center or --scan is required"))?;
            let k = cache.get(supertile).map_err(usage)?;
            check_vertex(&k, v)?;
            let b = ball(&k, v, radius).map_err(|e| Failure::Domain(e.to_string()))?;
            print_json(json!({"center": v, "radius": radius, "faces": b.faces.len(), "holes": hole_count(&k, &b)}));
            Ok(())
        }
        Cmd::SweepGrowth {
            max_n,
            supertile,
            samples,
        } => {
            let k = cache.get(supertile).map_err(usage)?;
            let centers: Vec<VertexId> = k
                .vertices()
                .filter(|&v| k.rim_distance(v) >= max_n + 3)
                .collect();
            let step = (centers.len() / samples.max(1)).max(1);
            let mut rows = Vec::new();
            let mut ok = true;
            for n in 2..=max_n {
                let mut worst = 0.0f64;
                let mut within = true;
                for &v in centers.iter().step_by(step).take(samples) {
                    let g = boundary_growth(&k, v, n).map_err(|e| Failure::Domain(e.to_string()))?;
                    within &= g.within_bounds(n);
                    if g.m > 0 {
                        worst = worst.max(g.m_next as f64 / g.m as f64);
                    }
                }
                ok &= within;
                rows.push(json!({"n": n, "max_ratio": worst, "within_bounds": within}));
            }
            print_json(json!({"supertile": supertile, "rows": rows}));
            if ok { Ok(()) } else { Err(Failure::Domain("growth bound violated".into())) }
        }
        Cmd::Census { radius, supertile, out } => {
            let k = cache.get(supertile).map_err(usage)?;
            emit(out.as_deref(), &ball_census(&k, radius, supertile).to_json())
        }
        Cmd::Iso {
            a,
            va,
            b,
            vb,
            expect_iso,
        } => {
            let (ca, cb) = (read_complex(&a)?, read_complex(&b)?);
            check_vertex(&ca, va)?;
            check_vertex(&cb, vb)?;
            let iso = anchored_isomorphic(&Patch::whole(&ca), va, &Patch::whole(&cb), vb);
            print_json(json!({"isomorphic": iso.is_some(), "vertex_map": iso.as_ref().map(|i| &i.vertex_map)}));
            match (iso, expect_iso) {
                (None, true) => Err(Failure::Domain("not isomorphic".into())),
                _ => Ok(()),
            }
        }
        Cmd::Occurs {
            needle,
            anchor,
            haystack,
            ignore_marks,
        } => {
            let (n, h) = (read_complex(&needle)?, read_complex(&haystack)?);
            check_vertex(&n, anchor)?;
            let policy = if ignore_marks { MarkPolicy::IgnoreMarks } else { MarkPolicy::Strict };
            let hits = find_occurrences(&Patch::whole(&n), anchor, &h, policy);
            print_json(json!({"count": hits.len(), "anchors": hits}));
            Ok(())
        }
        Cmd::HullPoint { gen, radius, out } => {
            let g = parse_generator(&gen)?;
            let p = make_point(cache, &g, radius).map_err(|e| Failure::Domain(e.to_string()))?;
            emit(out.as_deref(), &p.to_json())
        }
        Cmd::Dprime { a, b } => {
            let (x, y) = (read_point(&a)?, read_point(&b)?);
            let d = d_prime(&x, &y);
            print_json(json!({"value": d.as_f64(), "agreement": d.agreement(), "exact": d.exact}));
            Ok(())
        }
        Cmd::HullVerify { suite, samples, seed } => {
            let name = match suite {
                HullSuite::Ultrametric => "ultrametric",
                HullSuite::Fixedpoint => "fixed-points",
                HullSuite::Injectivity => "injectivity",
                HullSuite::Continuity => "continuity",
            };
            report(run_suite(cache, name, SuiteOptions { level: None, samples, seed }).map_err(usage)?)
        }
        Cmd::Verify { suite, n, samples, seed } => report(
            run_suite(
                cache,
                &suite,
                SuiteOptions {
                    level: n,
                    samples,
                    seed,
                },
            )
            .map_err(usage)?,
        ),
        Cmd::Export { input, format, out } => {
            let c = read_complex(&input)?;
            let bytes = match format {
                Format::Dot => export::to_dot(&c).into_bytes(),
                Format::Svg => export::to_svg(&c).into_bytes(),
                Format::Json => c.to_json(),
            };
            emit(out.as_deref(), &bytes)
        }
    }
}

fn report(r: verify::SuiteReport) -> Result<(), Failure> {
    print_json(serde_json::to_value(&r).expect("json"));
    if r.passed {
        Ok(())
    } else {
        Err(Failure::Domain(r.to_string()))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        // Only fails if a pool already exists, which cannot happen this early.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(m)) => {
            eprintln!("{}", json!({"error": "failed", "message": m}));
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("{}", json!({"error": "usage", "message": m}));
            ExitCode::from(2)
        }
    }
}
