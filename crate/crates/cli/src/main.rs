//! Command-line driver: one subcommand per pipeline stage.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use endofusion::category::pentagon::{module_pentagon_residual, pentagon_residual};
use endofusion::endomorphizer::{
    all_vertices, associators, decompose, endomorphize, intertwiner_defect, EndomorphizeOptions, UnitaryMode,
};
use endofusion::io::fixtures::{fixture, FIXTURE_NAMES};
use endofusion::io::format::{to_json, CategoryFile};
use endofusion::io::{flatten_f, load_category, load_module, render_pgm, render_svg, save_category, HeatmapOptions};
use endofusion::tube::{StarMode, TensorSpace, TubeAlgebra};
use endofusion::{Error, FusionCategoryData, ModuleCategoryData, Tolerances};

#[derive(Parser, Debug)]
#[command(name = "endofusion", version, about = "F-symbols of the dual category End_C(M) via the module tube algebra")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Residual tolerance for validation and the associator solve.
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = Unitary::Auto)]
    unitary: Unitary,
    /// Skip the validators when loading files.
    #[arg(long, global = true)]
    no_validate: bool,
    /// Use a built-in data set instead of files.
    #[arg(long, global = true, value_parser = clap::builder::PossibleValuesParser::new(FIXTURE_NAMES))]
    fixture: Option<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Unitary {
    Auto,
    On,
    Off,
}

#[derive(Args, Debug)]
struct Inputs {
    /// Category file (JSON).
    category: Option<PathBuf>,
    /// Module file (JSON); the regular module when omitted.
    module: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run every validator on the inputs.
    Validate(Inputs),
    /// Tube algebra dimension and audit.
    Tube(Inputs),
    /// Irreducible representations of the tube algebra.
    Irreps(Inputs),
    /// Fusion rules of the dual category.
    Fusion(Inputs),
    /// Vertex tensors for every admissible triple.
    Vertices(Inputs),
    /// F-symbols of the dual category, printed as JSON.
    Associators(Inputs),
    /// Full pipeline; writes the dual category file.
    Endomorphize {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(short, long)]
        output: PathBuf,
        /// Audit report destination; printed to stdout when omitted.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Heatmap of the F-symbols; `.pgm` output gives a graymap, anything else SVG.
    Plot {
        category: Option<PathBuf>,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, default_value_t = 12)]
        cell: usize,
        #[arg(long, default_value_t = 1.0)]
        clip: f64,
    },
}

/// An error tagged with the stage that raised it.
struct Failure {
    stage: &'static str,
    error: Error,
}

type Outcome = Result<(), Failure>;

fn at(stage: &'static str) -> impl FnOnce(Error) -> Failure {
    move |error| Failure { stage, error }
}

impl Global {
    fn tolerances(&self) -> Tolerances {
        let mut t = Tolerances::from_env();
        if let Some(v) = self.tol {
            t.residual = v;
        }
        t
    }

    fn options(&self) -> EndomorphizeOptions {
        let unitary = match self.unitary {
            Unitary::Auto => UnitaryMode::Auto,
            Unitary::On => UnitaryMode::On,
            Unitary::Off => UnitaryMode::Off,
        };
        EndomorphizeOptions { seed: self.seed, unitary, tol: self.tolerances(), ..Default::default() }
    }

    fn validate_tol(&self) -> Option<f64> {
        (!self.no_validate).then(|| self.tolerances().residual)
    }

    fn load_category(&self, path: Option<&Path>) -> Result<FusionCategoryData, Failure> {
        match (&self.fixture, path) {
            (Some(name), None) => fixture(name).map(|(c, _)| c).map_err(at("fixture")),
            (None, Some(p)) => load_category(p, self.validate_tol()).map_err(at("load")),
            (Some(_), Some(_)) => Err(Failure { stage: "args", error: Error::Malformed("give either --fixture or a file, not both".into()) }),
            (None, None) => Err(Failure { stage: "args", error: Error::Missing("no input: pass a category file or --fixture".into()) }),
        }
    }

    fn load(&self, inputs: &Inputs) -> Result<(FusionCategoryData, ModuleCategoryData), Failure> {
        if let Some(name) = &self.fixture {
            if inputs.category.is_some() || inputs.module.is_some() {
                return Err(Failure { stage: "args", error: Error::Malformed("give either --fixture or files, not both".into()) });
            }
            return fixture(name).map_err(at("fixture"));
        }
        let cat = self.load_category(inputs.category.as_deref())?;
        let module = match &inputs.module {
            Some(p) => load_module(p, &cat, self.validate_tol()).map_err(at("load"))?,
            None => ModuleCategoryData::regular(&cat).map_err(at("load"))?,
        };
        Ok((cat, module))
    }
}

fn print_json(value: &serde_json::Value) {
    print!("{}", to_json(value));
}

fn validate(g: &Global, inputs: &Inputs) -> Outcome {
    let tol = g.tolerances().residual;
    let (cat, module) = g.load(inputs)?;
    let mut rep = cat.validate(tol);
    rep.merge(module.validate(&cat, tol));
    println!("category pentagon residual: {:.3e}", pentagon_residual(&cat));
    println!("module pentagon residual: {:.3e}", module_pentagon_residual(&cat, &module));
    rep.into_result().map_err(at("validate"))?;
    println!("valid");
    Ok(())
}

fn tube(g: &Global, inputs: &Inputs) -> Outcome {
    let (cat, module) = g.load(inputs)?;
    let alg = TubeAlgebra::with_star(&cat, &module, StarMode::Auto).map_err(at("tube"))?;
    let pairs = TensorSpace::new(&alg).len();
    println!("dimension: {}", alg.dim());
    println!("structure constants: {}", alg.structure_constant_count());
    println!("boundary sectors: {}", alg.sectors().len());
    println!("star: {}", if alg.has_star() { "available" } else { "absent" });
    println!("pair basis: {pairs}");
    Ok(())
}

fn irreps(g: &Global, inputs: &Inputs) -> Outcome {
    let (cat, module) = g.load(inputs)?;
    let dec = decompose(&cat, &module, &g.options()).map_err(at("irreps"))?;
    let fusion = module.fusion();
    let list: Vec<_> = dec
        .irreps
        .iter()
        .map(|r| {
            let sectors: Vec<String> = r.sectors.iter().map(|&(m, n)| format!("{}|{}", fusion.label(m), fusion.label(n))).collect();
            serde_json::json!({ "label": r.label, "dim": r.dim, "weight": r.weight.re, "sectors": sectors })
        })
        .collect();
    print_json(&serde_json::json!({ "unitary": dec.unitary, "reseeds": dec.system.reseeds, "irreps": list }));
    Ok(())
}

fn fusion(g: &Global, inputs: &Inputs) -> Outcome {
    let (cat, module) = g.load(inputs)?;
    let dec = decompose(&cat, &module, &g.options()).map_err(at("fusion"))?;
    let ring = &dec.ring;
    for a in 0..ring.rank() {
        for b in 0..ring.rank() {
            let terms: Vec<String> = (0..ring.rank())
                .filter(|&c| ring.n(a, b, c) > 0)
                .map(|c| match ring.n(a, b, c) {
                    1 => ring.label(c).to_string(),
                    n => format!("{n}{}", ring.label(c)),
                })
                .collect();
            println!("{} x {} = {}", ring.label(a), ring.label(b), terms.join(" + "));
        }
    }
    Ok(())
}

fn vertices(g: &Global, inputs: &Inputs) -> Outcome {
    let (cat, module) = g.load(inputs)?;
    let opts = g.options();
    let dec = decompose(&cat, &module, &opts).map_err(at("fusion"))?;
    let verts = all_vertices(&dec, &opts.tol).map_err(at("vertices"))?;
    let label = |i: usize| dec.ring.label(i).to_string();
    let list: Vec<_> = verts
        .map
        .iter()
        .flat_map(|(&(a, b, c), vs)| vs.iter().map(move |v| (a, b, c, v)))
        .map(|(a, b, c, v)| {
            let entries: Vec<[f64; 2]> = v.entries().iter().map(|z| [z.re, z.im]).collect();
            serde_json::json!({
                "a": label(a), "b": label(b), "c": label(c), "multiplicity": v.multiplicity,
                "shape": [v.shape.0, v.shape.1, v.shape.2],
                "intertwiner_defect": intertwiner_defect(&dec.algebra, &dec.irreps, v),
                "entries": entries,
            })
        })
        .collect();
    print_json(&serde_json::json!({ "vertices": list }));
    Ok(())
}

fn associators_cmd(g: &Global, inputs: &Inputs) -> Outcome {
    let (cat, module) = g.load(inputs)?;
    let opts = g.options();
    let dec = decompose(&cat, &module, &opts).map_err(at("fusion"))?;
    let mut verts = all_vertices(&dec, &opts.tol).map_err(at("vertices"))?;
    let (out, residual) = associators(&dec, &mut verts, &opts.tol).map_err(at("associators"))?;
    eprintln!("max solve residual {residual:.3e}");
    print!("{}", to_json(&CategoryFile::from_data(&out)));
    Ok(())
}

fn endomorphize_cmd(g: &Global, inputs: &Inputs, output: &Path, report: Option<&Path>) -> Outcome {
    let (cat, module) = g.load(inputs)?;
    let run = endomorphize(&cat, &module, &g.options()).map_err(at("endomorphize"))?;
    save_category(&run.output, output).map_err(at("write"))?;
    let text = to_json(&run.report);
    match report {
        Some(p) => fs::write(p, text).map_err(|source| Failure { stage: "write", error: Error::Io { path: p.display().to_string(), source } })?,
        None => print!("{text}"),
    }
    Ok(())
}

fn plot(g: &Global, category: Option<&Path>, output: &Path, cell: usize, clip: f64) -> Outcome {
    let cat = g.load_category(category)?;
    let m = flatten_f(&cat);
    let opts = HeatmapOptions { cell: cell.max(1), clip, ..Default::default() };
    let bytes = if output.extension().is_some_and(|e| e == "pgm") { render_pgm(&m, &opts) } else { render_svg(&m, &opts).into_bytes() };
    fs::write(output, bytes).map_err(|source| Failure { stage: "write", error: Error::Io { path: output.display().to_string(), source } })
}

fn run(cli: &Cli) -> Outcome {
    let g = &cli.global;
    match &cli.command {
        Command::Validate(i) => validate(g, i),
        Command::Tube(i) => tube(g, i),
        Command::Irreps(i) => irreps(g, i),
        Command::Fusion(i) => fusion(g, i),
        Command::Vertices(i) => vertices(g, i),
        Command::Associators(i) => associators_cmd(g, i),
        Command::Endomorphize { inputs, output, report } => endomorphize_cmd(g, inputs, output, report.as_deref()),
        Command::Plot { category, output, cell, clip } => plot(g, category.as_deref(), output, *cell, *clip),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure { stage, error }) => {
            eprintln!("error [{stage}]: {error}");
            ExitCode::from(error.exit_code() as u8)
        }
    }
}
