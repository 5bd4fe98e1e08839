use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use serde::Serialize;
use serde_json::json;

use schur_core::bounds::{best_bounds, RamseyTable};
use schur_core::constructions::{
    case1_coloring, case2_coloring, clique_to_solution, difference_edge_coloring, find_mono_clique,
};
use schur_core::oracle::{brute_force_value_with_budget, BruteForce};
use schur_core::sat::{
    decode_model, encode, parse_dimacs, solve_with_budget, to_dimacs, ExternalSolver, SatStatus, SolveBudget,
    SolverChoice,
};
use schur_core::search::{
    check_conjectured_value, reproduce_table, search_exact, Agreement, SearchOptions, Strategy, TableName, WitnessStore,
};
use schur_core::{find_mono_solution, Coloring, ProblemSpec, SchurError};

use crate::exit::{self, CliError};
use crate::{Case, Command, Format, SolverArgs, SolverKind, SpecArgs, StrategyArg};

type CliResult<T = ExitCode> = Result<T, CliError>;

pub fn dispatch(command: Command, format: Format) -> CliResult {
    match command {
        Command::Bounds { spec, ramsey_table } => bounds(&spec, ramsey_table.as_deref(), format),
        Command::Verify { coloring, spec } => verify(&coloring, &spec, format),
        Command::Encode { spec, n, output } => encode_cmd(&spec, n, output.as_deref(), format),
        Command::Solve {
            spec,
            n,
            witness_out,
            solver,
        } => solve(&spec, n, witness_out.as_deref(), &solver, format),
        Command::Sat { file, conflicts } => sat(&file, conflicts),
        Command::Search {
            spec,
            start,
            strategy,
            jobs,
            witness_dir,
            max_probes,
            solver,
        } => {
            let strategy = match strategy {
                StrategyArg::Ramp => Strategy::RampBisect,
                StrategyArg::Linear => Strategy::Linear,
            };
            let mut options = search_options(&solver)?;
            options.start = start;
            options.strategy = strategy;
            options.jobs = positive(jobs, "--jobs")?;
            options.max_probes = max_probes;
            options.store = Some(WitnessStore::new(witness_dir));
            search(&spec, &options, format)
        }
        Command::Check {
            spec,
            value,
            witness_out,
            solver,
        } => check(&spec, value, witness_out.as_deref(), &solver, format),
        Command::Construct { case, u, output } => construct(case, u, output.as_deref(), format),
        Command::Embed {
            coloring,
            clique,
            color,
        } => embed(&coloring, clique.zip(color), format),
        Command::Table {
            name,
            max_value,
            solver,
        } => table(&name, max_value, &solver, format),
        Command::Brute { spec, cap, nodes } => brute(&spec, cap, nodes, format),
    }
}

fn parse_spec(args: &SpecArgs) -> CliResult<ProblemSpec> {
    match &args.stu {
        Some(stu) => {
            let spec: ProblemSpec = stu.parse()?;
            if spec.r() != 3 {
                return Err(CliError::usage(format!("--stu expects three values, got {stu:?}")));
            }
            Ok(spec)
        }
        None => Ok(ProblemSpec::from_args(&args.values)?),
    }
}

fn positive<T: PartialOrd + Default>(v: T, flag: &str) -> CliResult<T> {
    if v > T::default() {
        Ok(v)
    } else {
        Err(CliError::usage(format!("{flag} must be positive")))
    }
}

fn time_limit(args: &SolverArgs) -> CliResult<Option<Duration>> {
    args.time_limit
        .map(|secs| {
            if secs.is_finite() && secs > 0.0 {
                Ok(Duration::from_secs_f64(secs))
            } else {
                Err(CliError::usage("--time-limit must be a positive number of seconds"))
            }
        })
        .transpose()
}

/// The solver for individual calls. `per_call_time` folds `--time-limit`
/// into each embedded call.
fn solver_choice(args: &SolverArgs, per_call_time: bool) -> CliResult<SolverChoice> {
    let conflicts = args.conflicts.map(|c| positive(c, "--conflicts")).transpose()?;
    let time = time_limit(args)?;
    match args.solver {
        SolverKind::Embedded => Ok(SolverChoice::Embedded(SolveBudget {
            max_conflicts: conflicts,
            max_time: if per_call_time { time } else { None },
        })),
        SolverKind::External => {
            if conflicts.is_some() {
                return Err(CliError::usage("--conflicts applies to the embedded solver only"));
            }
            let command = args
                .external_cmd
                .as_deref()
                .filter(|c| !c.trim().is_empty())
                .ok_or_else(|| CliError::usage("--solver external needs --external-cmd or SCHUR_EXT_SOLVER"))?;
            let mut solver = ExternalSolver::new(command);
            if let Some(dir) = &args.scratch_dir {
                solver = solver.with_scratch_dir(dir);
            }
            Ok(SolverChoice::External(solver))
        }
    }
}

fn search_options(args: &SolverArgs) -> CliResult<SearchOptions> {
    Ok(SearchOptions {
        solver: solver_choice(args, false)?,
        time_budget: time_limit(args)?,
        ..SearchOptions::default()
    })
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("output serializes"));
}

fn code(c: u8) -> ExitCode {
    ExitCode::from(c)
}

fn bounds(spec: &SpecArgs, ramsey_table: Option<&Path>, format: Format) -> CliResult {
    let spec = parse_spec(spec)?.canonical();
    let table = ramsey_table.map(RamseyTable::read).transpose()?;
    let report = best_bounds(&spec, table.as_ref())?;
    match format {
        Format::Text => println!("{report}"),
        Format::Json => println!("{}", report.to_json()),
        Format::Csv => {
            println!("name,kind,value");
            for e in &report.entries {
                println!("{},{},{}", csv_field(&e.name), e.kind.as_str(), e.value);
            }
        }
    }
    Ok(code(exit::OK))
}

fn verify(path: &Path, spec: &SpecArgs, format: Format) -> CliResult {
    let spec = parse_spec(spec)?;
    let coloring = Coloring::read(path)?;
    let found = find_mono_solution(&coloring, &spec)?;
    match format {
        Format::Json => print_json(&json!({ "valid": found.is_none(), "solution": found })),
        _ => match &found {
            None => println!("VALID"),
            Some(t) => println!("INVALID\n{t}"),
        },
    }
    Ok(code(if found.is_none() { exit::OK } else { exit::NEGATIVE }))
}

fn encode_cmd(spec: &SpecArgs, n: usize, output: Option<&Path>, format: Format) -> CliResult {
    let spec = parse_spec(spec)?;
    let cnf = encode(&spec, n)?;
    let text = to_dimacs(&cnf);
    let Some(path) = output else {
        print!("{text}");
        return Ok(code(exit::OK));
    };
    std::fs::write(path, text).map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display())))?;
    match format {
        Format::Json => print_json(&json!({
            "path": path,
            "num_vars": cnf.num_vars(),
            "num_clauses": cnf.num_clauses(),
        })),
        _ => println!("p cnf {} {} -> {}", cnf.num_vars(), cnf.num_clauses(), path.display()),
    }
    Ok(code(exit::OK))
}

fn write_witness(path: Option<&Path>, witness: Option<&Coloring>) -> CliResult<Option<PathBuf>> {
    match (path, witness) {
        (Some(p), Some(w)) => {
            w.write(p)?;
            Ok(Some(p.to_path_buf()))
        }
        _ => Ok(None),
    }
}

fn solve(spec: &SpecArgs, n: usize, witness_out: Option<&Path>, args: &SolverArgs, format: Format) -> CliResult {
    let spec = parse_spec(spec)?;
    let solver = solver_choice(args, true)?;
    let cnf = encode(&spec, n)?;
    let outcome = solver.solve(&cnf)?;
    let witness = outcome.model.as_ref().map(|m| decode_model(m, &spec, n)).transpose()?;
    let written = write_witness(witness_out, witness.as_ref())?;
    match format {
        Format::Json => print_json(&json!({
            "spec": spec,
            "n": n,
            "status": outcome.status,
            "solver": solver.id(),
            "witness": witness,
            "witness_path": written,
        })),
        _ => {
            println!("{}", if outcome.is_sat() { "SAT" } else { "UNSAT" });
            if let Some(p) = written {
                println!("witness: {}", p.display());
            }
        }
    }
    Ok(code(exit::OK))
}

/// SAT-competition front end so the binary can itself serve as an
/// external solver.
fn sat(file: &Path, conflicts: Option<u64>) -> CliResult {
    let text = std::fs::read_to_string(file).map_err(|e| CliError::usage(format!("{}: {e}", file.display())))?;
    let cnf = parse_dimacs(&text)?;
    let budget = match conflicts {
        Some(c) => SolveBudget::conflicts(c),
        None => SolveBudget::unlimited(),
    };
    match solve_with_budget(&cnf, budget) {
        Ok((outcome, stats)) => {
            println!(
                "c decisions {} conflicts {} propagations {}",
                stats.decisions, stats.conflicts, stats.propagations
            );
            match outcome.model {
                Some(model) => {
                    println!("s SATISFIABLE");
                    let lits: Vec<String> = model
                        .iter()
                        .enumerate()
                        .map(|(i, &v)| if v { format!("{}", i + 1) } else { format!("-{}", i + 1) })
                        .collect();
                    for chunk in lits.chunks(20) {
                        println!("v {}", chunk.join(" "));
                    }
                    println!("v 0");
                    Ok(code(10))
                }
                None => {
                    println!("s UNSATISFIABLE");
                    Ok(code(20))
                }
            }
        }
        Err(SchurError::Resource { what, .. }) => {
            println!("c {what}");
            println!("s UNKNOWN");
            Ok(code(exit::OK))
        }
        Err(e) => Err(e.into()),
    }
}

fn search(spec: &SpecArgs, options: &SearchOptions, format: Format) -> CliResult {
    let spec = parse_spec(spec)?;
    let outcome = match search_exact(&spec, options) {
        Ok(o) => o,
        Err(abort) => {
            for p in &abort.probes {
                eprintln!("probe n = {}: {}", p.n, status_word(p.status));
            }
            return Err(CliError::from(SchurError::from(abort)));
        }
    };
    let store = options.store.as_ref().expect("search always has a store");
    let witness_path = store.save(&spec, &outcome.witness)?;
    match format {
        Format::Json => print_json(&json!({
            "spec": outcome.spec,
            "value": outcome.value,
            "solver": outcome.solver_id,
            "witness_path": witness_path,
            "witness": outcome.witness,
            "probes": outcome.probes,
        })),
        Format::Csv => {
            println!("n,status,elapsed_s,source");
            for p in &outcome.probes {
                let source = serde_json::to_value(p.source).expect("serializes");
                println!(
                    "{},{},{:.6},{}",
                    p.n,
                    status_word(p.status),
                    p.elapsed.as_secs_f64(),
                    source.as_str().unwrap_or_default()
                );
            }
        }
        Format::Text => {
            println!("{}", outcome.spec);
            println!("S = {}", outcome.value);
            println!("witness: {}", witness_path.display());
            for p in &outcome.probes {
                println!(
                    "  n = {:<4} {:<5} {:.3}s",
                    p.n,
                    status_word(p.status),
                    p.elapsed.as_secs_f64()
                );
            }
        }
    }
    Ok(code(exit::OK))
}

fn status_word(s: SatStatus) -> &'static str {
    match s {
        SatStatus::Sat => "sat",
        SatStatus::Unsat => "unsat",
    }
}

fn check(spec: &SpecArgs, value: usize, witness_out: Option<&Path>, args: &SolverArgs, format: Format) -> CliResult {
    let spec = parse_spec(spec)?;
    let solver = solver_choice(args, true)?;
    let result = check_conjectured_value(&spec, value, &solver)?;
    let written = write_witness(witness_out, result.witness.as_ref())?;
    match format {
        Format::Json => print_json(&json!({
            "spec": result.spec,
            "claimed": result.claimed,
            "confirmed": result.confirmed(),
            "sat_below": result.sat_below,
            "unsat_confirmed": result.unsat_confirmed,
            "witness_path": written,
        })),
        _ => {
            let v = result.claimed;
            if result.confirmed() {
                println!("CONFIRMED {} = {v}", result.spec);
            } else {
                println!("REFUTED {} = {v}", result.spec);
                if !result.sat_below {
                    println!("[1, {}] has no valid coloring", v - 1);
                }
                if !result.unsat_confirmed {
                    println!("[1, {v}] has a valid coloring");
                }
            }
            if let Some(p) = written {
                println!("witness: {}", p.display());
            }
        }
    }
    Ok(code(if result.confirmed() { exit::OK } else { exit::NEGATIVE }))
}

fn construct(case: Case, u: usize, output: Option<&Path>, format: Format) -> CliResult {
    let (coloring, ks) = match case {
        Case::Case1 => (case1_coloring(u)?, [3, 3, u]),
        Case::Case2 => (case2_coloring(u)?, [3, 4, u]),
    };
    let spec = ProblemSpec::new(ks.to_vec())?;
    let Some(path) = output else {
        println!("{}", coloring.to_json());
        return Ok(code(exit::OK));
    };
    coloring.write(path)?;
    match format {
        Format::Json => print_json(&json!({ "spec": spec, "n": coloring.n(), "path": path })),
        _ => println!(
            "valid coloring of [1, {}] for {spec} -> {}",
            coloring.n(),
            path.display()
        ),
    }
    Ok(code(exit::OK))
}

fn embed(path: &Path, clique: Option<(usize, usize)>, format: Format) -> CliResult {
    let coloring = Coloring::read(path)?;
    let ec = difference_edge_coloring(&coloring);
    let found = match clique {
        Some((k, color)) => {
            let vertices = find_mono_clique(&ec, color, k)?;
            let solution = vertices
                .as_deref()
                .map(|v| clique_to_solution(v, &coloring))
                .transpose()?;
            Some((vertices, solution))
        }
        None => None,
    };
    match format {
        Format::Json => {
            let (vertices, solution) = found.clone().unwrap_or_default();
            print_json(&json!({ "edge_coloring": ec, "clique": vertices, "solution": solution }));
        }
        _ => {
            let m = ec.vertex_count();
            for a in 0..m {
                let row: String = (0..m).map(|b| ec.color_of(a, b).map_or('.', color_char)).collect();
                println!("{row}");
            }
            match &found {
                Some((Some(v), Some(t))) => println!("clique {v:?} -> {t}"),
                Some(_) => println!("no monochromatic clique"),
                None => {}
            }
        }
    }
    let hit = matches!(found, Some((Some(_), _)));
    Ok(code(if hit { exit::NEGATIVE } else { exit::OK }))
}

fn color_char(c: usize) -> char {
    char::from_digit(c as u32, 36).unwrap_or('#')
}

fn table(name: &str, max_value: Option<usize>, args: &SolverArgs, format: Format) -> CliResult {
    let name: TableName = name.parse()?;
    let options = search_options(args)?;
    let results = reproduce_table(name, &options, max_value)?;
    let label = |a: &Agreement| match a {
        Agreement::Agree => "agree".to_string(),
        Agreement::Disagree => "disagree".to_string(),
        Agreement::Skipped { reason } => format!("skipped ({reason})"),
    };
    let ks = |ks: &[usize]| ks.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
    match format {
        Format::Json => print_json(&results),
        Format::Csv => {
            println!("ks,expected,kind,computed,result,provenance");
            for r in &results {
                println!(
                    "{},{},{},{},{},{}",
                    csv_field(&ks(&r.row.ks)),
                    r.row.expected,
                    kind_word(&r.row),
                    r.computed.map(|c| c.to_string()).unwrap_or_default(),
                    csv_field(&label(&r.agreement)),
                    csv_field(&r.row.provenance)
                );
            }
        }
        Format::Text => {
            println!("{:<12} {:>8} {:<6} {:>8}  result", "ks", "expected", "kind", "computed");
            for r in &results {
                println!(
                    "{:<12} {:>8} {:<6} {:>8}  {}",
                    ks(&r.row.ks),
                    r.row.expected,
                    kind_word(&r.row),
                    r.computed.map(|c| c.to_string()).unwrap_or_else(|| "-".into()),
                    label(&r.agreement)
                );
            }
        }
    }
    let disagree = results.iter().any(|r| r.agreement == Agreement::Disagree);
    Ok(code(if disagree { exit::NEGATIVE } else { exit::OK }))
}

fn kind_word(row: &schur_core::search::TableRow) -> &'static str {
    match row.kind {
        schur_core::search::RowKind::Exact => "exact",
        schur_core::search::RowKind::Lower => "lower",
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn brute(spec: &SpecArgs, cap: usize, nodes: u64, format: Format) -> CliResult {
    let spec = parse_spec(spec)?;
    let result = brute_force_value_with_budget(&spec, cap, nodes)?;
    let value = match result {
        BruteForce::Value(v) => Some(v),
        BruteForce::ExceedsCap => None,
    };
    match format {
        Format::Json => print_json(&json!({ "spec": spec, "cap": cap, "value": value })),
        _ => match value {
            Some(v) => println!("S = {v}"),
            None => println!("S > {cap}"),
        },
    }
    Ok(code(exit::OK))
}
