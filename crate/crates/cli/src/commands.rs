use std::fs::File;
use std::io::Write;
use std::path::Path;
use std::time::SystemTime;

use xbench_core::Rng;
use xbench_core::graphcut::{
    self, GrayImage, PgmFormat, bk_maxflow, generate_test_image, read_pgm, write_graph, write_pgm,
};
use xbench_harness::record::records_to_csv;
use xbench_harness::{
    Clock, MonotonicClock, Protocol, ResultFile, RunMeta, Target, WorkloadId, WorkloadSpec,
    render_csv, render_markdown, run_workload, summarize,
};

use crate::args::{
    Cli, Command, ExtractArgs, GenImageArgs, PgmEncoding, ReportArgs, ReportFormat, RunArgs,
    RunFormat, SegmentArgs,
};
use crate::failure::{CliResult, Code, Failure};

pub fn dispatch(cli: Cli) -> CliResult {
    match cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Report(args) => cmd_report(args),
        Command::Segment(args) => cmd_segment(args),
        Command::ExtractGraph(args) => cmd_extract_graph(args),
        Command::GenImage(args) => cmd_gen_image(args),
    }
}

fn parse_suite(suite: &str) -> CliResult<Vec<WorkloadId>> {
    if suite.trim() == "all" {
        return Ok(WorkloadId::ALL.to_vec());
    }
    let mut ids = Vec::new();
    for name in suite.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let id: WorkloadId = name.parse()?;
        if !ids.contains(&id) {
            ids.push(id);
        }
    }
    if ids.is_empty() {
        return Err(Failure::config(format!(
            "empty suite (valid: all, {})",
            WorkloadId::valid_list()
        )));
    }
    Ok(ids)
}

fn apply_param(specs: &mut [WorkloadSpec], raw: &str) -> CliResult {
    let (key, value) = raw
        .split_once('=')
        .ok_or_else(|| Failure::config(format!("--param '{raw}' is not KEY=VALUE")))?;
    let value: u64 = value
        .trim()
        .parse()
        .map_err(|_| Failure::config(format!("--param '{raw}': value must be a non-negative integer")))?;
    match key.trim().split_once('.') {
        Some((workload, key)) => {
            let id: WorkloadId = workload.parse()?;
            let spec = specs
                .iter_mut()
                .find(|s| s.id == id)
                .ok_or_else(|| Failure::config(format!("--param '{raw}': {id} is not in the suite")))?;
            spec.set(key, value)?;
        }
        None => {
            let key = key.trim();
            let mut matched = false;
            for spec in specs.iter_mut().filter(|s| s.params.contains_key(key)) {
                spec.set(key, value)?;
                matched = true;
            }
            if !matched {
                return Err(Failure::config(format!(
                    "--param '{raw}': no selected workload has parameter '{key}'"
                )));
            }
        }
    }
    Ok(())
}

/// Opens the destination before any work so an unwritable path fails fast.
fn open_output(path: Option<&Path>) -> CliResult<Option<File>> {
    path.map(|p| File::create(p).map_err(|e| Failure::write(p, e))).transpose()
}

fn emit(file: Option<File>, path: Option<&Path>, bytes: &[u8]) -> CliResult {
    match (file, path) {
        (Some(mut f), Some(p)) => f
            .write_all(bytes)
            .and_then(|()| f.flush())
            .map_err(|e| Failure::write(p, e)),
        _ => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(bytes)
                .and_then(|()| stdout.flush())
                .map_err(|e| Failure::new(Code::Output, format!("cannot write stdout: {e}")))
        }
    }
}

fn run_meta(args: &RunArgs) -> RunMeta {
    let (timestamp, host) = if args.no_meta {
        (None, None)
    } else {
        let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
        (
            Some(humantime::format_rfc3339_seconds(SystemTime::now()).to_string()),
            Some(format!(
                "{}-{} ({threads} threads)",
                std::env::consts::OS,
                std::env::consts::ARCH
            )),
        )
    };
    RunMeta {
        env: args.env.clone(),
        target: Target::Native,
        timestamp,
        host,
    }
}

fn cmd_run(args: RunArgs) -> CliResult {
    if args.reps == 0 {
        return Err(Failure::config("--reps must be >= 1"));
    }
    let mut specs: Vec<WorkloadSpec> = parse_suite(&args.suite)?
        .into_iter()
        .map(|id| WorkloadSpec::new(id, args.seed))
        .collect();
    if let Some(inner) = args.inner {
        for spec in &mut specs {
            spec.set(xbench_harness::workload::INNER_ITERATIONS, inner)?;
        }
    }
    for raw in &args.params {
        apply_param(&mut specs, raw)?;
    }
    for spec in &specs {
        spec.validate()?;
    }

    let out_path = args.out.as_deref();
    let file = open_output(out_path)?;
    let meta = run_meta(&args);
    let protocol = Protocol {
        repetitions: args.reps,
        warmup: args.warmup,
    };
    let clock = MonotonicClock::new();
    let mut records = Vec::with_capacity(specs.len());
    for spec in &specs {
        let rec = run_workload(spec, &clock, protocol, &meta)?;
        let line = format!(
            "{:<17} mean {:>12.3} ms  std {:>10.3} ms  reps {}  checksum {}",
            rec.workload, rec.mean_ms, rec.std_ms, rec.repetitions, rec.result_checksum
        );
        if out_path.is_some() {
            println!("{line}");
        } else {
            eprintln!("{line}");
        }
        records.push(rec);
    }

    let rendered = match args.format {
        RunFormat::Json => ResultFile::new(records).to_json()?,
        RunFormat::Csv => records_to_csv(&records),
        RunFormat::Md => render_markdown(&summarize(&records, None, false)?),
    };
    emit(file, out_path, rendered.as_bytes())
}

fn cmd_report(args: ReportArgs) -> CliResult {
    let mut records = Vec::new();
    for path in &args.files {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::read(path, e))?;
        let file = ResultFile::from_json(&text).map_err(|e| {
            let f = Failure::from(e);
            Failure::new(f.code, format!("{}: {}", path.display(), f.message))
        })?;
        records.extend(file.records);
    }
    let summary = summarize(&records, args.baseline.as_deref(), args.merge)?;
    let rendered = match args.format {
        ReportFormat::Md => render_markdown(&summary),
        ReportFormat::Csv => render_csv(&summary),
    };
    let out_path = args.out.as_deref();
    let file = open_output(out_path)?;
    emit(file, out_path, rendered.as_bytes())
}

fn load_pgm(path: &Path) -> CliResult<GrayImage> {
    let bytes = std::fs::read(path).map_err(|e| Failure::read(path, e))?;
    read_pgm(&bytes).map_err(|e| Failure::new(Code::Input, format!("{}: {e}", path.display())))
}

fn pgm_format(enc: PgmEncoding) -> PgmFormat {
    match enc {
        PgmEncoding::Plain => PgmFormat::Plain,
        PgmEncoding::Raw => PgmFormat::Raw,
    }
}

fn input_error(err: xbench_core::Error) -> Failure {
    Failure::new(Code::Input, err)
}

fn cmd_segment(args: SegmentArgs) -> CliResult {
    let observed = load_pgm(&args.image)?;
    let file = open_output(Some(&args.out))?;
    let (initial, model, graph) =
        graphcut::extract_graph(&observed, args.threshold, args.lambda).map_err(input_error)?;
    let clock = MonotonicClock::new();
    let start = clock.now_ms();
    let cut = bk_maxflow(&graph.net);
    let elapsed = clock.now_ms() - start;
    let labeling = graph.labeling_from_cut(&initial, &cut.side);
    let energy = model.energy(&labeling).map_err(input_error)?;
    emit(file, Some(&args.out), &write_pgm(&labeling, pgm_format(args.pgm)))?;
    println!("max_flow={} energy={energy} elapsed_ms={elapsed:.3}", cut.max_flow);
    Ok(())
}

fn cmd_extract_graph(args: ExtractArgs) -> CliResult {
    let observed = load_pgm(&args.image)?;
    let (_, _, graph) =
        graphcut::extract_graph(&observed, args.threshold, args.lambda).map_err(input_error)?;
    let out_path = args.out.as_deref();
    let file = open_output(out_path)?;
    emit(file, out_path, write_graph(&graph.net).as_bytes())
}

fn cmd_gen_image(args: GenImageArgs) -> CliResult {
    if args.width == 0 || args.height == 0 {
        return Err(Failure::config("--width and --height must be >= 1"));
    }
    let file = open_output(Some(&args.out))?;
    let img = generate_test_image(args.width, args.height, args.pattern, &mut Rng::new(args.seed));
    emit(file, Some(&args.out), &write_pgm(&img, pgm_format(args.pgm)))
}
