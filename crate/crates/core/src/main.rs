//! Command-line entry point: compute Sylow graphs, run the verification
//! suites, run the arithmetic arrow predictor, and evaluate formation
//! membership and closure checks.
//!
//! Exit codes: 0 success, 1 failed verification or internal error,
//! 2 parse error, 3 budget error.

use clap::{Parser, Subcommand, ValueEnum};
use sylowgraph::arith::{self, LieFamily, LieTypeSpec, Sign};
use sylowgraph::formation::{self, FormationSpec, PrimePartition};
use sylowgraph::report::{self, GraphReport};
use sylowgraph::{catalog, graph, verify, Ctx, Error};

#[derive(Parser)]
#[command(name = "sylowgraph", version, about = "Sylow graphs of finite permutation groups")]
struct Cli {
    /// Largest group order the element scans may enumerate.
    #[arg(long, global = true, default_value_t = 30_000_000)]
    max_order: u64,
    /// Largest conjugacy class the reality and centralizer walks may visit.
    #[arg(long, global = true, default_value_t = 2_000_000)]
    max_class_size: u64,
    /// Seed for the pseudo-random element generation (recorded in reports).
    #[arg(long, global = true, default_value_t = 0x51_1097)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteName {
    Symmetric,
    Alternating,
    Psl2,
    Sporadic,
    Lemmas,
    Formations,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the Sylow graph of a group given in the mini-language
    /// (e.g. "A8", "M11", "PSL2(27):3", "S3 x C5").
    Compute {
        group: String,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Run a verification suite and report one pass/fail line per check.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteName::All)]
        suite: SuiteName,
        /// Also run the M23 check (about a minute of work).
        #[arg(long)]
        include_m23: bool,
    },
    /// Predict arrows of a Lie-type Sylow graph from the arithmetic.
    Predict {
        /// Family: A, 2A (linear/unitary, rank l > 2), D, 2D (the
        /// orthogonal family, given by l for rank 2l+1), E6, 2E6.
        #[arg(long = "type")]
        family: String,
        /// Rank l (for D/2D: the parameter l of the 4l+2 family).
        #[arg(long, default_value_t = 0)]
        l: u32,
        #[arg(long, default_value = "+")]
        eps: String,
        #[arg(long)]
        q: u64,
        /// Compare the predictions against a constructible instance.
        #[arg(long)]
        cross_check: bool,
    },
    /// Formation membership and Sylow-normalizer closure for one group.
    Formation {
        group: String,
        /// Prime partition, e.g. "2,3|5".
        #[arg(long)]
        blocks: String,
    },
}

fn ctx_from(cli: &Cli) -> Ctx {
    Ctx {
        max_order_enum: cli.max_order,
        max_class_size: cli.max_class_size,
        seed: cli.seed,
        ..Ctx::default()
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } => 2,
        Error::Budget(_) | Error::FactorBound(_) => 3,
        _ => 1,
    }
}

fn main() {
    let cli = Cli::parse();
    let ctx = ctx_from(&cli);
    let result = match &cli.command {
        Command::Compute { group, format } => cmd_compute(group, *format, &ctx),
        Command::Verify { suite, include_m23 } => cmd_verify(*suite, *include_m23, &ctx),
        Command::Predict {
            family,
            l,
            eps,
            q,
            cross_check,
        } => cmd_predict(family, *l, eps, *q, *cross_check, &ctx),
        Command::Formation { group, blocks } => cmd_formation(group, blocks, &ctx),
    };
    match result {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {}", e);
            std::process::exit(exit_code_for(&e));
        }
    }
}

fn cmd_compute(group: &str, format: Format, ctx: &Ctx) -> Result<i32, Error> {
    let (label, g) = catalog::parse_group(group, ctx)?;
    let sg = graph::sylow_graph(&g, &label, ctx)?;
    match format {
        Format::Json => println!("{}", GraphReport::from_graph(&sg).to_json()),
        Format::Dot => print!("{}", report::to_dot(&sg)),
        Format::Table => print!("{}", report::to_table(&sg)),
    }
    Ok(0)
}

fn cmd_verify(suite: SuiteName, include_m23: bool, ctx: &Ctx) -> Result<i32, Error> {
    let reports = match suite {
        SuiteName::Symmetric => vec![verify::symmetric_suite(ctx, 3, 12)],
        SuiteName::Alternating => vec![verify::a8_check(ctx), verify::alternating_suite(ctx, 5, 12)],
        SuiteName::Psl2 => vec![verify::psl2_suite(ctx)],
        SuiteName::Sporadic => vec![verify::sporadic_suite(ctx, include_m23)],
        SuiteName::Lemmas => vec![verify::lemmas_suite(ctx)],
        SuiteName::Formations => vec![verify::formations_suite(ctx)],
        SuiteName::All => verify::all_suites(ctx, include_m23),
    };
    let mut all_pass = true;
    for r in &reports {
        print!("{}", r.render());
        all_pass &= r.all_pass();
    }
    println!("seed: {}", ctx.seed);
    println!("result: {}", if all_pass { "all checks passed" } else { "FAILURES" });
    Ok(if all_pass { 0 } else { 1 })
}

fn cmd_predict(
    family: &str,
    l: u32,
    eps: &str,
    q: u64,
    cross_check: bool,
    ctx: &Ctx,
) -> Result<i32, Error> {
    let fam = LieFamily::parse(family)?;
    // Twisted family names carry their own sign; untwisted ones take it
    // from --eps.
    let sign = if fam.is_twisted() {
        Sign::Minus
    } else {
        match eps {
            "+" | "plus" => Sign::Plus,
            "-" | "minus" => Sign::Minus,
            other => return Err(Error::Invalid(format!("eps must be + or -, got '{}'", other))),
        }
    };
    let (spec, sigma) = match fam {
        LieFamily::A | LieFamily::TwoA => {
            let fam = if sign == Sign::Minus { LieFamily::TwoA } else { fam };
            let spec = LieTypeSpec::new(fam, l, q, ctx)?;
            let sigma = arith::sigma_partition_linear(l, sign, q, ctx)?;
            (spec, Some(sigma))
        }
        LieFamily::D | LieFamily::TwoD => {
            let fam = if sign == Sign::Minus { LieFamily::TwoD } else { fam };
            let spec = LieTypeSpec::new(fam, 2 * l + 1, q, ctx)?;
            let sigma = arith::sigma_partition_orthogonal(l, sign, q, ctx)?;
            (spec, Some(sigma))
        }
        LieFamily::E6 | LieFamily::TwoE6 => {
            let fam = if sign == Sign::Minus { LieFamily::TwoE6 } else { fam };
            (LieTypeSpec::new(fam, 6, q, ctx)?, None)
        }
        other => return Err(Error::UnsupportedFamily(other.to_string())),
    };
    println!("spec: {}", spec);
    if let Some(sigma) = &sigma {
        println!("sigma1: {:?}", sigma.sigma1);
        println!("sigma2: {:?}", sigma.sigma2);
        println!("sigma3: {:?}", sigma.sigma3);
        if sigma.sigma1.is_empty() {
            let n = match (spec.family, sigma.provenance) {
                (_, arith::SigmaProvenance::Orthogonal) => match spec.family {
                    LieFamily::D => 2 * l + 1,
                    _ => 4 * l + 2,
                },
                _ => 0,
            };
            if n > 0 && arith::is_zsigmondy_exception(q, n) {
                println!("note: sigma1 is empty by the Zsigmondy exception at ({}, {})", q, n);
            }
        }
    }
    let arrows = arith::predicted_edges(&spec, ctx)?;
    println!("predicted arrows (sound, not complete):");
    for a in &arrows {
        println!("  {} -> {}   [{}]", a.from, a.to, a.justification);
    }
    if cross_check {
        let instance = match (spec.family, l, q) {
            (LieFamily::A, 4, 2) => Some(("A8 (socle L4(2))", catalog::alternating(8)?)),
            (LieFamily::A, 3, 2) => Some(("PSL3(2)", catalog::psl(3, 2, ctx)?)),
            (LieFamily::A, 3, 3) => Some(("PSL3(3)", catalog::psl(3, 3, ctx)?)),
            _ => None,
        };
        match instance {
            Some((label, g)) => {
                let sg = graph::sylow_graph(&g, label, ctx)?;
                println!("computed arrows of {}: {:?}", label, sg.arrow_pairs());
                let mut sound = true;
                for a in &arrows {
                    if !sg.has_arrow(a.from, a.to) {
                        println!("  MISSING: predicted {} -> {}", a.from, a.to);
                        sound = false;
                    }
                }
                println!(
                    "cross-check: predictions {} the computed arrow set",
                    if sound { "are a subset of" } else { "VIOLATE" }
                );
                return Ok(if sound { 0 } else { 1 });
            }
            None => println!("cross-check: no constructible instance for this spec"),
        }
    }
    Ok(0)
}

fn cmd_formation(group: &str, blocks: &str, ctx: &Ctx) -> Result<i32, Error> {
    let (label, g) = catalog::parse_group(group, ctx)?;
    let partition = PrimePartition::parse(blocks)?;
    let spec = FormationSpec::from_partition(&partition);
    println!("group: {} (order {})", label, g.order());
    println!("blocks: {:?}", partition.blocks);
    println!("spec valid: {}", spec.validate());
    let in_product = formation::in_product_class(&g, &partition, ctx)?;
    println!("in product class: {}", in_product);
    if sylowgraph::subgrp::is_soluble(&g, ctx)? {
        let member = formation::soluble_covering_membership(&g, &spec, ctx)?;
        println!("soluble covering-formation membership: {}", member);
    } else {
        println!("soluble covering-formation membership: n/a (group not soluble)");
    }
    let part = partition.clone();
    let cc = ctx.clone();
    let member = move |h: &sylowgraph::PermGroup| formation::in_product_class(h, &part, &cc);
    let report = formation::n_closure_check(&g, &label, &member, ctx)?;
    println!("sylow normalizers:");
    for (p, order, ok) in &report.normalizers {
        println!("  p = {}: |N| = {}, in class: {}", p, order, ok);
    }
    println!("closure equivalence holds: {}", report.equivalence_holds);
    Ok(0)
}
