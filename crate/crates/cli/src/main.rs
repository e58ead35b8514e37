//! `mipkit`: command line access to the library.
//!
//! Exit codes: 0 computed, 1 negative verdict, 2 usage or input error,
//! 3 resource bound, 4 internal error.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use mipkit::fpalgebra::{dimension_series, AugmentationTower, JenLie, JenningsData, Method};
use mipkit::invariants::{self, BatteryOptions, CompareOptions, Verdict};
use mipkit::obelisk::{self, ObeliskFamily};
use mipkit::presentation::{parse_file, serialize_presentation};
use mipkit::smallalg::{self, Verdict as WitnessVerdict};
use mipkit::{catalog, MipError, PcGroup, Subgroup};

#[derive(Parser)]
#[command(
    name = "mipkit",
    version,
    about = "Finite p-groups and their modular group algebras"
)]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Lower and upper central series and the dimension subgroups.
    Series { group: String },
    /// Jennings basis weights and the graded Lie algebra fingerprint.
    Jennings { group: String },
    /// Group algebra computations.
    Algebra {
        #[command(subcommand)]
        cmd: AlgebraCmd,
    },
    /// The invariant battery.
    Invariants {
        group: String,
        /// Truncation degree of the filtration fingerprint.
        #[arg(long, default_value_t = 4)]
        truncate: usize,
    },
    /// Compares the batteries of two groups. Exit 1 when distinguished.
    Compare {
        a: String,
        b: String,
        /// Node budget for each isomorphism search, 0 to skip.
        #[arg(long, default_value_t = 200_000)]
        iso_budget: u64,
    },
    /// Obelisk predicate, rank pattern, dimension formula and framing.
    Obelisk { group: String },
    /// Random search for obelisks among small presentations.
    SearchObelisks {
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value_t = Family::Class4)]
        family: Family,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        attempts: u64,
    },
    /// Prints a random re-presentation of the group.
    Relabel {
        group: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Small group algebra `kG / I(kG) I(k gamma_2(G))`.
    Smallalg {
        #[command(subcommand)]
        cmd: SmallalgCmd,
    },
    /// Built-in presentations, usable as `catalog:<name>`.
    Catalog {
        #[command(subcommand)]
        cmd: CatalogCmd,
    },
}

#[derive(Subcommand)]
enum AlgebraCmd {
    /// `dim I(kG)^n` for `n = 1..=max`.
    IdealDims {
        group: String,
        #[arg(long)]
        max: usize,
    },
}

#[derive(Subcommand)]
enum SmallalgCmd {
    /// Structure of the normalized units `S = G ⋊ A`. Exit 1 if a clause fails.
    Check { group: String },
    /// Checks a witness for `H` inside the units of the small group algebra
    /// of `G`. Exit 1 on FAIL, 3 on UNKNOWN.
    Verify {
        g: String,
        h: String,
        #[arg(long)]
        witness: PathBuf,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    List,
    Show { name: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Class3,
    Class4,
}

/// Command outcome: rendered output and whether the verdict was negative.
struct Out {
    text: String,
    negative: bool,
}

impl Out {
    fn ok(text: String) -> Self {
        Out {
            text,
            negative: false,
        }
    }
}

fn exit_code(e: &MipError) -> u8 {
    match e {
        MipError::Usage(_)
        | MipError::Parse { .. }
        | MipError::Inconsistent(_)
        | MipError::Precondition(_) => 2,
        MipError::Resource { .. } => 3,
        MipError::Internal(_) => 4,
    }
}

fn load(spec: &str) -> mipkit::Result<PcGroup> {
    if let Some(name) = spec.strip_prefix("catalog:") {
        return catalog::group(name);
    }
    let text =
        std::fs::read_to_string(spec).map_err(|e| MipError::usage(format!("{spec}: {e}")))?;
    let f = parse_file(&text).map_err(|e| match e {
        MipError::Parse { line, msg } => MipError::Parse {
            line,
            msg: format!("{spec}: {msg}"),
        },
        other => other,
    })?;
    f.build()
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn logs(s: &[Subgroup]) -> Vec<usize> {
    s.iter().map(|x| x.log_order()).collect()
}

fn run(cli: Cli) -> mipkit::Result<Out> {
    let as_json = cli.json;
    match cli.cmd {
        Cmd::Series { group } => {
            let g = load(&group)?;
            #[derive(Serialize)]
            struct Series {
                p: u64,
                log_order: usize,
                class: usize,
                lower_central: Vec<usize>,
                upper_central: Vec<usize>,
                dimension_subgroups: Vec<usize>,
                frattini: usize,
                agemo: usize,
            }
            let s = Series {
                p: g.p(),
                log_order: g.n_gens(),
                class: g.nilpotency_class(),
                lower_central: logs(&g.lower_central_series()),
                upper_central: logs(&g.upper_central_series()),
                dimension_subgroups: logs(&dimension_series(&g, Method::Jennings)?),
                frattini: g.frattini().log_order(),
                agemo: g.agemo().log_order(),
            };
            if as_json {
                return Ok(Out::ok(json(&s)));
            }
            let mut t = String::new();
            let _ = writeln!(t, "order {}^{}, class {}", s.p, s.log_order, s.class);
            let _ = writeln!(t, "log_p |gamma_i|: {:?}", s.lower_central);
            let _ = writeln!(t, "log_p |Z_i|:     {:?}", s.upper_central);
            let _ = writeln!(t, "log_p |D_n|:     {:?}", s.dimension_subgroups);
            let _ = writeln!(t, "log_p |Phi|: {}, log_p |G^p|: {}", s.frattini, s.agemo);
            Ok(Out::ok(t))
        }
        Cmd::Jennings { group } => {
            let g = load(&group)?;
            let jd = JenningsData::new(&g);
            #[derive(Serialize)]
            struct Jen {
                dims: Vec<usize>,
                weights: Vec<usize>,
                monomial_weight_counts: Vec<usize>,
                lie: mipkit::fpalgebra::JenFingerprint,
            }
            let j = Jen {
                dims: jd.dims().to_vec(),
                weights: jd.weights().to_vec(),
                monomial_weight_counts: jd.monomial_weight_counts(),
                lie: JenLie::new(&g, &jd).fingerprint(),
            };
            if as_json {
                return Ok(Out::ok(json(&j)));
            }
            let mut t = String::new();
            let _ = writeln!(t, "rank D_n/D_(n+1): {:?}", j.dims);
            let _ = writeln!(t, "tuple weights:    {:?}", j.weights);
            let _ = writeln!(t, "dim I^n/I^(n+1):  {:?}", &j.monomial_weight_counts[1..]);
            let _ = writeln!(t, "bracket dims:     {:?}", j.lie.bracket_dims);
            let _ = writeln!(t, "p-map image dims: {:?}", j.lie.pmap_image_dims);
            Ok(Out::ok(t))
        }
        Cmd::Algebra {
            cmd: AlgebraCmd::IdealDims { group, max },
        } => {
            let g = load(&group)?;
            if max == 0 {
                return Err(MipError::usage("--max must be at least 1"));
            }
            let tower = AugmentationTower::new(&g)?;
            let dims: Vec<usize> = (1..=max).map(|n| tower.power(n).dim()).collect();
            if as_json {
                return Ok(Out::ok(json(&dims)));
            }
            let mut t = String::new();
            for (n, d) in dims.iter().enumerate() {
                let _ = writeln!(t, "dim I^{} = {d}", n + 1);
            }
            Ok(Out::ok(t))
        }
        Cmd::Invariants { group, truncate } => {
            let g = load(&group)?;
            let r = invariants::battery_with(
                &g,
                BatteryOptions {
                    truncation: truncate,
                },
            )?;
            if as_json {
                return Ok(Out::ok(r.to_json() + "\n"));
            }
            let mut t = String::new();
            let _ = writeln!(
                t,
                "order {}^{}, class {}, d(G) = {}",
                r.p, r.log_order, r.class, r.min_generators
            );
            let _ = writeln!(t, "abelianization {:?}", r.abelianization);
            let _ = writeln!(
                t,
                "D_n ranks {:?}; for gamma_2 {:?}",
                r.d_ranks, r.d_ranks_gamma2
            );
            let _ = writeln!(
                t,
                "gamma_2 type {:?}; Gamma type {:?}",
                r.gamma2_type, r.gamma_cap_type
            );
            let _ = writeln!(
                t,
                "Sandling quotient of order p^{}",
                r.sandling_quotient.fingerprint.log_order
            );
            let _ = writeln!(t, "Roggenkamp parameter {:?}", r.roggenkamp);
            let _ = writeln!(t, "obelisk {:?}", r.obelisk);
            let _ = writeln!(t, "settled {:?}", r.settled);
            Ok(Out::ok(t))
        }
        Cmd::Compare { a, b, iso_budget } => {
            let (ga, gb) = (load(&a)?, load(&b)?);
            let (ra, rb) = std::thread::scope(|s| {
                let ha = s.spawn(|| invariants::battery(&ga));
                let rb = invariants::battery(&gb);
                (ha.join().expect("battery thread"), rb)
            });
            let c = invariants::compare_with(&ra?, &rb?, CompareOptions { iso_budget });
            let negative = c.verdict == Verdict::Distinguished;
            let text = if as_json {
                c.to_json() + "\n"
            } else {
                let mut t = String::new();
                for f in &c.fields {
                    let _ = writeln!(t, "{:<24} {:?} {}", f.field, f.status, f.detail);
                }
                let _ = writeln!(
                    t,
                    "verdict: {}",
                    serde_json::to_value(c.verdict).unwrap().as_str().unwrap()
                );
                t
            };
            Ok(Out { text, negative })
        }
        Cmd::Obelisk { group } => {
            let g = load(&group)?;
            let r = obelisk::obelisk_report(&g)?;
            if as_json {
                return Ok(Out::ok(json(&r)));
            }
            let mut t = String::new();
            let _ = writeln!(t, "obelisk: {} (class {})", r.is_obelisk, r.class);
            if r.small_prime {
                let _ = writeln!(t, "p <= 3: obelisks are defined for p > 3 only");
            }
            if let Some(rp) = &r.rank_pattern {
                let _ = writeln!(
                    t,
                    "ranks of gamma_i/gamma_(i+1): {:?} ({})",
                    rp.ranks,
                    pass(rp.passed())
                );
            }
            if let Some(rows) = &r.dimension_rows {
                for row in rows {
                    let _ = writeln!(
                        t,
                        "n = {:>3}: m(n) = {:>2}, log|D_n| = {}, log|gamma_m| = {} {}",
                        row.n,
                        row.m,
                        row.log_d_n,
                        row.log_gamma_m,
                        pass(row.matches)
                    );
                }
            }
            if let Some(f) = &r.framed {
                let _ = writeln!(
                    t,
                    "maximal subgroup ranks {:?}, framed {:?}",
                    f.max_subgroup_ranks,
                    f.framed()
                );
            }
            Ok(Out::ok(t))
        }
        Cmd::SearchObelisks {
            p,
            family,
            seed,
            attempts,
        } => {
            let fam = match family {
                Family::Class3 => ObeliskFamily::Class3,
                Family::Class4 => ObeliskFamily::Class4,
            };
            if p <= 3 || !mipkit::pcgroup::is_prime(p) {
                return Err(MipError::usage("obelisks need a prime p > 3"));
            }
            let hits = obelisk::search_obelisks(p, fam, seed, attempts);
            if as_json {
                return Ok(Out::ok(json(&hits)));
            }
            let mut t = String::new();
            for h in &hits {
                let _ = writeln!(t, "# attempt {}, framed {}", h.attempt, h.framed);
                t.push_str(&serialize_presentation(&h.group));
            }
            let _ = writeln!(t, "# {} hits in {attempts} attempts", hits.len());
            Ok(Out::ok(t))
        }
        Cmd::Relabel { group, seed } => {
            let g = load(&group)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Ok(Out::ok(serialize_presentation(
                &g.random_relabeling(&mut rng)?,
            )))
        }
        Cmd::Smallalg {
            cmd: SmallalgCmd::Check { group },
        } => {
            let g = load(&group)?;
            let r = smallalg::structure_report(&g)?;
            let negative = !r.passed();
            let text = if as_json {
                json(&r)
            } else {
                let mut t = String::new();
                let _ = writeln!(
                    t,
                    "|G| = p^{}, |A| = p^{}, |gamma_2(S)| = p^{}",
                    r.log_order_g, r.a_rank, r.log_gamma2
                );
                for c in &r.clauses {
                    let _ = writeln!(t, "{} {} {}", pass(c.holds), c.name, c.detail);
                }
                t
            };
            Ok(Out { text, negative })
        }
        Cmd::Smallalg {
            cmd: SmallalgCmd::Verify { g, h, witness },
        } => {
            let (gg, hh) = (load(&g)?, load(&h)?);
            let text = std::fs::read_to_string(&witness)
                .map_err(|e| MipError::usage(format!("{}: {e}", witness.display())))?;
            let w = smallalg::parse_witness(&text)?;
            let r = smallalg::verify_witness(&gg, &hh, &w)?;
            let out = if as_json {
                json(&r)
            } else {
                let mut t = String::new();
                for (name, img) in &r.images {
                    let _ = writeln!(t, "{name} = {img}");
                }
                for (name, rel) in &r.derived {
                    let _ = writeln!(t, "{name} derived from {rel}");
                }
                for c in &r.relations {
                    let _ = writeln!(t, "{} {}: {} = {}", pass(c.holds), c.relation, c.lhs, c.rhs);
                }
                if !r.note.is_empty() {
                    let _ = writeln!(t, "{}", r.note);
                }
                let _ = writeln!(
                    t,
                    "{}",
                    serde_json::to_value(r.verdict).unwrap().as_str().unwrap()
                );
                t
            };
            match r.verdict {
                WitnessVerdict::Pass => Ok(Out::ok(out)),
                WitnessVerdict::Fail => Ok(Out {
                    text: out,
                    negative: true,
                }),
                WitnessVerdict::Unknown => {
                    print!("{out}");
                    Err(MipError::resource("witness subgroup closure", 0, 0))
                }
            }
        }
        Cmd::Catalog {
            cmd: CatalogCmd::List,
        } => {
            let entries = catalog::entries();
            if as_json {
                return Ok(Out::ok(json(&entries)));
            }
            let mut t = String::new();
            for e in entries {
                let source = e.metadata.get("source").map(String::as_str).unwrap_or("");
                let _ = writeln!(t, "{:<24} {}", e.name, source);
            }
            Ok(Out::ok(t))
        }
        Cmd::Catalog {
            cmd: CatalogCmd::Show { name },
        } => Ok(Out::ok(catalog::entry(&name)?.text.to_string())),
    }
}

fn pass(b: bool) -> &'static str {
    if b {
        "PASS"
    } else {
        "FAIL"
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(u8::from(out.negative))
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
