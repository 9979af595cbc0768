use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use nrphy::harness::{
    decode_llrs, encode_chain, estimate_llrs, random_payload, run_bler_sweep, run_harq_sim, run_throughput_bench,
    ChainPlan, HarqSimParams, ReleasePolicy, FPGA_REFERENCE_MBPS,
};
use nrphy::llr::{awgn, pack_bit_words, pack_llr_words, sigma2_from_snr_db, unpack_llr_words, PackedWordStream, WordKind};
use nrphy::{Bit, ChainConfig, HarqBufferPool};

#[derive(Parser)]
#[command(name = "nrphy", version, about = "5G NR channel-coding chain simulator")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Config file of `key = value` lines, or `default`.
    #[arg(long, global = true, default_value = "default")]
    config: String,
    /// Overrides the config seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Writes CSV results here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Writes the intermediate word stream; `.hex` gives a text dump,
    /// anything else little-endian binary.
    #[arg(long, global = true)]
    dump_words: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Encodes a random payload and reports the transmission.
    Encode,
    /// Decodes a soft-bit word stream produced by `roundtrip --dump-words`
    ///
    /// With `--dump-words`, writes the decoded payload bits.
    Decode {
        /// LLR word file (`.hex` or little-endian binary).
        #[arg(long)]
        input: PathBuf,
        /// Payload seed to compare against.
        #[arg(long)]
        payload_seed: Option<u64>,
    },
    /// Encodes, passes through the channel and decodes, retransmitting
    /// through the rv schedule until the payload is recovered.
    Roundtrip,
    /// Single-transmission block error rate sweep.
    Bler {
        /// Comma-separated SNR points in dB; defaults to the config SNR.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        snr: Vec<f64>,
        #[arg(long, default_value_t = 100)]
        blocks: usize,
    },
    /// Round-robin HARQ traffic through a limited soft-buffer pool.
    HarqSim {
        #[arg(long, default_value_t = 16)]
        pool_size: usize,
        #[arg(long, default_value_t = 16)]
        processes: usize,
        #[arg(long, default_value_t = 256)]
        slots: usize,
    },
    /// Times the receive chain over one transport block.
    Bench {
        /// Code blocks per transport block; defaults to 20 and 40.
        #[arg(long)]
        blocks: Option<usize>,
        #[arg(long, default_value_t = 5)]
        reps: usize,
    },
}

enum Failure {
    /// Bad invocation or config: exit 2.
    Usage(String),
    /// The run itself failed: exit 1.
    Run(String),
}

impl From<nrphy::Error> for Failure {
    fn from(e: nrphy::Error) -> Self {
        Failure::Run(e.to_string())
    }
}

type CliResult<T> = Result<T, Failure>;

fn load_config(common: &Common) -> CliResult<ChainConfig> {
    let mut cfg = if common.config == "default" {
        ChainConfig::default()
    } else {
        let text = fs::read_to_string(&common.config)
            .map_err(|e| Failure::Usage(format!("cannot read config {}: {e}", common.config)))?;
        ChainConfig::parse(&text).map_err(|e| Failure::Usage(format!("config {}: {e}", common.config)))?
    };
    if let Some(seed) = common.seed {
        cfg.seed = seed;
    }
    Ok(cfg)
}

fn write_file(path: &Path, bytes: &[u8]) -> CliResult<()> {
    fs::write(path, bytes).map_err(|e| Failure::Run(format!("cannot write {}: {e}", path.display())))
}

fn is_hex(path: &Path) -> bool {
    path.extension().is_some_and(|e| e == "hex")
}

fn dump_words(path: &Path, words: &PackedWordStream) -> CliResult<()> {
    if is_hex(path) {
        write_file(path, words.to_hex_dump().as_bytes())
    } else {
        write_file(path, &words.to_le_bytes())
    }
}

fn read_words(path: &Path, kind: WordKind) -> CliResult<PackedWordStream> {
    let bytes = fs::read(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let words = if is_hex(path) {
        PackedWordStream::from_hex_dump(kind, &String::from_utf8_lossy(&bytes))
    } else {
        PackedWordStream::from_le_bytes(kind, &bytes)
    };
    Ok(words?)
}

fn emit_csv(common: &Common, csv: &str) -> CliResult<()> {
    match &common.out {
        Some(path) => write_file(path, csv.as_bytes()),
        None => {
            print!("{csv}");
            Ok(())
        }
    }
}

fn channel(cfg: &ChainConfig, symbols: Vec<nrphy::EqualizedSymbol>, seed: u64) -> Vec<nrphy::EqualizedSymbol> {
    if cfg.is_noiseless() {
        symbols
    } else {
        awgn(&symbols, sigma2_from_snr_db(cfg.snr_db), seed)
    }
}

fn encode(common: &Common, cfg: &ChainConfig) -> CliResult<()> {
    let plan = ChainPlan::new(cfg)?;
    let tx = encode_chain(&plan, &random_payload(plan.payload_len(), cfg.seed), 0)?;
    println!(
        "{} code blocks, {} Z={} K={} N_cb={}, G={} bits, {} {} symbols",
        cfg.codeblocks,
        plan.code.bg(),
        plan.code.zc(),
        plan.code.k(),
        plan.code.n_cb(),
        cfg.g(),
        tx.symbols.len(),
        cfg.modulation
    );
    if let Some(path) = &common.dump_words {
        dump_words(path, &tx.scrambled)?;
    }
    if common.out.is_some() {
        let mut csv = String::from("index,re_raw,im_raw\n");
        for (i, s) in tx.symbols.iter().enumerate() {
            csv.push_str(&format!("{i},{},{}\n", s.re, s.im));
        }
        emit_csv(common, &csv)?;
    }
    Ok(())
}

fn report_blocks(outcomes: &[nrphy::harness::BlockOutcome], payload: Option<&[Bit]>, k_prime: usize) -> bool {
    let mut all_ok = true;
    for (b, o) in outcomes.iter().enumerate() {
        let matches = payload.map(|p| p[b * k_prime..(b + 1) * k_prime] == o.payload[..]);
        all_ok &= o.result.parity_ok && matches != Some(false);
        println!(
            "block {b}: parity_ok={} iterations={} termination={:?}{}",
            o.result.parity_ok,
            o.result.iterations_used,
            o.result.termination,
            matches.map(|m| format!(" payload_match={m}")).unwrap_or_default()
        );
    }
    all_ok
}

fn decode(common: &Common, cfg: &ChainConfig, input: &Path, payload_seed: Option<u64>) -> CliResult<bool> {
    let plan = ChainPlan::new(cfg)?;
    let words = read_words(input, WordKind::Llrs)?;
    let mut llrs = unpack_llr_words(&words)?;
    if llrs.len() < cfg.g() || llrs.len() >= cfg.g() + 4 {
        return Err(Failure::Usage(format!(
            "{} holds {} soft bits, config expects G = {}",
            input.display(),
            llrs.len(),
            cfg.g()
        )));
    }
    llrs.truncate(cfg.g());
    let mut pool = HarqBufferPool::new();
    let out = decode_llrs(&plan, &llrs, &mut pool, 0, ReleasePolicy::for_config(cfg))?;
    if let Some(path) = &common.dump_words {
        let decoded: Vec<Bit> = out.iter().flat_map(|o| o.payload.iter().copied()).collect();
        dump_words(path, &pack_bit_words(&decoded))?;
    }
    let payload = payload_seed.map(|s| random_payload(plan.payload_len(), s));
    Ok(report_blocks(&out, payload.as_deref(), cfg.k_prime))
}

fn roundtrip(common: &Common, cfg: &ChainConfig) -> CliResult<bool> {
    let plan = ChainPlan::new(cfg)?;
    let payload = random_payload(plan.payload_len(), cfg.seed);
    let mut pool = HarqBufferPool::new();
    let policy = ReleasePolicy::for_config(cfg);
    for round in 0..cfg.rv_schedule.len() {
        let tx = encode_chain(&plan, &payload, round)?;
        let rx = channel(cfg, tx.symbols, cfg.seed.wrapping_add(round as u64 + 1));
        let llrs = estimate_llrs(&plan, &rx);
        if round == 0 {
            if let Some(path) = &common.dump_words {
                dump_words(path, &pack_llr_words(&llrs))?;
            }
        }
        let out = decode_llrs(&plan, &llrs, &mut pool, round, policy)?;
        println!("round {round} (rv {}):", cfg.rv_for_round(round).get());
        if report_blocks(&out, Some(&payload), cfg.k_prime) {
            return Ok(true);
        }
    }
    Ok(false)
}

fn bler(common: &Common, cfg: &ChainConfig, snr: &[f64], blocks: usize) -> CliResult<()> {
    if blocks == 0 {
        return Err(Failure::Usage("--blocks must be at least 1".into()));
    }
    let points = if snr.is_empty() { vec![cfg.snr_db] } else { snr.to_vec() };
    let sweep = run_bler_sweep(cfg, &points, blocks)?;
    emit_csv(common, &sweep.to_csv()?)
}

fn harq_sim(common: &Common, cfg: &ChainConfig, pool_size: usize, processes: usize, slots: usize) -> CliResult<()> {
    let params = HarqSimParams {
        pool_size,
        processes,
        slots,
        ..HarqSimParams::default()
    };
    let report = run_harq_sim(cfg, params)?;
    eprint!("{}", report.report.summary());
    emit_csv(common, &report.to_csv()?)
}

fn bench(common: &Common, cfg: &ChainConfig, blocks: Option<usize>, reps: usize) -> CliResult<()> {
    let counts = match blocks {
        Some(0) => return Err(Failure::Usage("--blocks must be at least 1".into())),
        Some(c) => vec![c],
        None => FPGA_REFERENCE_MBPS.iter().map(|&(c, _)| c).collect(),
    };
    let mut csv = String::new();
    for c in counts {
        let r = run_throughput_bench(cfg, c, reps)?;
        let reference = r
            .reference_mbps()
            .map(|m| format!("{m:.1} Mbps (FPGA, for context)"))
            .unwrap_or_else(|| "-".into());
        eprintln!(
            "C={c:>3}: {:>8.2} Mbps software, {} block errors | reference {reference}",
            r.throughput_mbps(),
            r.report.block_errors()
        );
        let rows = r.to_csv()?;
        if csv.is_empty() {
            csv.push_str(&rows);
        } else {
            csv.push_str(rows.split_once('\n').map_or("", |(_, body)| body));
        }
    }
    emit_csv(common, &csv)
}

/// `Some(verdict)` for commands that check a payload.
fn run(cli: &Cli) -> CliResult<Option<bool>> {
    let cfg = load_config(&cli.common)?;
    let common = &cli.common;
    match &cli.command {
        Command::Encode => encode(common, &cfg).map(|_| None),
        Command::Decode { input, payload_seed } => decode(common, &cfg, input, *payload_seed).map(Some),
        Command::Roundtrip => roundtrip(common, &cfg).map(Some),
        Command::Bler { snr, blocks } => bler(common, &cfg, snr, *blocks).map(|_| None),
        Command::HarqSim {
            pool_size,
            processes,
            slots,
        } => harq_sim(common, &cfg, *pool_size, *processes, *slots).map(|_| None),
        Command::Bench { blocks, reps } => bench(common, &cfg, *blocks, *reps).map(|_| None),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(true)) => {
            println!("OK");
            ExitCode::SUCCESS
        }
        Ok(Some(false)) => {
            println!("FAILED");
            ExitCode::FAILURE
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Run(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
