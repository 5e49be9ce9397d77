//! Command-line interface: argument definitions and command implementations.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use hycon_core::confidence::{score_corpus, Aggregation, ScoringInput, ScoringOptions};
use hycon_core::dsp::{compute_mfcc, extract_perceptual_features, FrameConfig};
use hycon_core::ngram::{
    correct_transcript, fused_score, perplexity, rescore_nbest, train_lm, CorrectionConfig,
    Lexicon, MAX_ORDER,
};
use hycon_core::textmetrics::{align_lines, corpus_wer};
use hycon_core::trainer::{
    accuracy, generate_noisy_clusters, noise_robustness_experiment, train, ExperimentConfig,
    ScoreProfile, TrainConfig, WeightMode,
};
use hycon_core::{
    AggregationWeights, AnnealSchedule, CorpusRecord, MfccSequence, NGramError, SourceKind,
    WeightLogits,
};

use crate::arpa::{dump_arpa, load_arpa, parse_arpa, write_arpa};
use crate::error::{io_error, HyconError};
use crate::manifest::load_manifest;
use crate::synth::{corrupt_sentences, generate_corpus, grammar_vocabulary};
use crate::tables::{
    format_dataset, format_features, format_report, format_train_log, format_transcripts,
    parse_dataset, parse_features, parse_lexicon, parse_nbest, parse_posteriors, parse_transcripts,
};
use crate::wav::decode_wav;

type Result<T> = std::result::Result<T, HyconError>;

#[derive(Debug, Parser)]
#[command(
    name = "hycon",
    version,
    about = "Confidence scoring, weighted training and n-gram correction for mixed real/synthetic speech corpora"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Extract the five perceptual features for every manifest record.
    Features(FeaturesArgs),
    /// Compute static, model and hybrid confidence for every record.
    Score(ScoreArgs),
    /// Train, evaluate and check Kneser-Ney language models.
    #[command(subcommand)]
    Lm(LmCommand),
    /// Lexicon-constrained correction of decoded transcripts.
    Correct(CorrectArgs),
    /// Pick the best N-best hypothesis per utterance by shallow fusion.
    Rescore(RescoreArgs),
    /// Train the reference classifier with the confidence-weighted loss.
    Train(TrainArgs),
    /// Run a packaged experiment.
    #[command(subcommand)]
    Experiment(ExperimentCommand),
    /// Word error rate between line-aligned reference and hypothesis files.
    Wer(WerArgs),
    /// Write a template-grammar text corpus, optionally with a corrupted copy.
    GenCorpus(GenCorpusArgs),
    /// Write a noisy two-cluster dataset snapshot for `train`.
    GenData(GenDataArgs),
}

#[derive(Debug, Clone, Args)]
pub struct FrameArgs {
    /// Frame length in samples.
    #[arg(long, default_value_t = 400)]
    pub frame_len: usize,
    /// Hop between frames in samples.
    #[arg(long, default_value_t = 160)]
    pub hop: usize,
    /// FFT size; a power of two at least the frame length.
    #[arg(long, default_value_t = 512)]
    pub fft_size: usize,
    /// Pre-emphasis coefficient applied before MFCC analysis.
    #[arg(long, default_value_t = 0.97)]
    pub preemphasis: f64,
    /// Number of mel filters.
    #[arg(long, default_value_t = 26)]
    pub n_mels: usize,
    /// Number of cepstral coefficients kept (c0 included).
    #[arg(long, default_value_t = 13)]
    pub n_mfcc: usize,
    /// Energy fraction that defines spectral rolloff.
    #[arg(long, default_value_t = 0.85)]
    pub rolloff: f64,
}

impl FrameArgs {
    fn config(&self) -> Result<FrameConfig> {
        let cfg = FrameConfig {
            frame_len: self.frame_len,
            hop: self.hop,
            fft_size: self.fft_size,
            preemphasis: self.preemphasis,
            n_mels: self.n_mels,
            n_mfcc: self.n_mfcc,
            rolloff_fraction: self.rolloff,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Args)]
pub struct FeaturesArgs {
    /// Manifest TSV; relative audio paths resolve against its directory.
    #[arg(long)]
    pub manifest: PathBuf,
    /// Output TSV (stdout when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub frame: FrameArgs,
}

#[derive(Debug, Args)]
pub struct ScoreArgs {
    #[arg(long)]
    pub manifest: PathBuf,
    /// Feature TSV produced by `features`.
    #[arg(long)]
    pub features: PathBuf,
    /// Decoded transcripts of aligned synthetic records (`utt_id<TAB>words`).
    #[arg(long)]
    pub hyp: Option<PathBuf>,
    /// Directory of `<utt_id>.tsv` posterior matrices; records without a
    /// file get c_model = 0.5.
    #[arg(long)]
    pub posteriors: Option<PathBuf>,
    /// Weight of the perceptual score.
    #[arg(long, default_value_t = 0.4)]
    pub alpha: f64,
    /// Weight of the acoustic similarity score.
    #[arg(long, default_value_t = 0.3)]
    pub beta: f64,
    /// Weight of the WER score.
    #[arg(long, default_value_t = 0.3)]
    pub gamma: f64,
    /// Softmax logits `w1,w2,w3` instead of fixed weights.
    #[arg(long, value_delimiter = ',', num_args = 3, conflicts_with_all = ["alpha", "beta", "gamma"])]
    pub logits: Option<Vec<f64>>,
    /// Mixing coefficient between static and model confidence.
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    /// Score aligned records lacking a hypothesis with s_wer = 0.
    #[arg(long)]
    pub allow_missing_hyp: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub frame: FrameArgs,
}

#[derive(Debug, Subcommand)]
pub enum LmCommand {
    /// Train one model (`--order`) or a sweep (`--orders 3,4,5`).
    Train(LmTrainArgs),
    /// Perplexity of a text under a model.
    Ppl(LmPplArgs),
    /// Check that a model file survives load and dump unchanged.
    DumpCheck(LmDumpCheckArgs),
}

#[derive(Debug, Args)]
pub struct LmTrainArgs {
    /// Training text, one sentence per line.
    #[arg(long)]
    pub text: PathBuf,
    /// Model order.
    #[arg(long, default_value_t = 3, conflicts_with = "orders")]
    pub order: usize,
    /// Comma-separated orders to sweep; requires --out-dir.
    #[arg(long, value_delimiter = ',', requires = "out_dir")]
    pub orders: Option<Vec<usize>>,
    /// Output ARPA file for a single order.
    #[arg(long, required_unless_present = "orders")]
    pub out: Option<PathBuf>,
    /// Directory receiving `order<k>.arpa` and `perplexity.tsv` in sweep mode.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    /// Evaluation text for the sweep report (defaults to the training text).
    #[arg(long)]
    pub eval: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct LmPplArgs {
    #[arg(long)]
    pub model: PathBuf,
    #[arg(long)]
    pub text: PathBuf,
}

#[derive(Debug, Args)]
pub struct LmDumpCheckArgs {
    #[arg(long)]
    pub model: PathBuf,
}

#[derive(Debug, Args)]
pub struct CorrectArgs {
    /// ARPA language model.
    #[arg(long)]
    pub model: PathBuf,
    /// Word list, one per line.
    #[arg(long)]
    pub lexicon: PathBuf,
    /// Hypotheses as `utt_id<TAB>words`.
    #[arg(long)]
    pub hyp: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Largest character edit distance for a replacement.
    #[arg(long, default_value_t = 2)]
    pub max_edits: usize,
    /// log10 penalty per character edit.
    #[arg(long, default_value_t = 0.8)]
    pub edit_penalty: f64,
    #[arg(long, default_value_t = 8)]
    pub beam: usize,
    #[arg(long, default_value_t = 1.0)]
    pub lm_weight: f64,
}

#[derive(Debug, Args)]
pub struct RescoreArgs {
    #[arg(long)]
    pub model: PathBuf,
    /// N-best entries as `utt_id<TAB>acoustic<TAB>words` (natural-log scores).
    #[arg(long)]
    pub nbest: PathBuf,
    #[arg(long, default_value_t = 0.5)]
    pub lm_weight: f64,
    /// Score added per hypothesis word.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub length_bonus: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Fixed,
    Learnable,
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    /// Dataset snapshot (`x0..\tlabel\ts_perc\ts_sim\ts_wer`).
    #[arg(long)]
    pub data: PathBuf,
    #[arg(long, value_enum, default_value_t = ModeArg::Fixed)]
    pub mode: ModeArg,
    #[arg(long, default_value_t = 50)]
    pub epochs: usize,
    #[arg(long, default_value_t = 1e-2)]
    pub lr: f64,
    /// Separate learning rate for the weight logits.
    #[arg(long)]
    pub logits_lr: Option<f64>,
    #[arg(long, default_value_t = 16)]
    pub batch_size: usize,
    /// Keep the learning rate constant instead of cosine decay.
    #[arg(long)]
    pub no_cosine: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 0.4)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.3)]
    pub beta: f64,
    #[arg(long, default_value_t = 0.3)]
    pub gamma: f64,
    /// Initial logits `w1,w2,w3` in learnable mode.
    #[arg(long, value_delimiter = ',', num_args = 3, allow_hyphen_values = true)]
    pub logits: Option<Vec<f64>>,
    #[arg(long, default_value_t = 1.0)]
    pub lambda_start: f64,
    #[arg(long, default_value_t = 0.5)]
    pub lambda_end: f64,
    /// Weight-entropy regularizer strength (learnable mode).
    #[arg(long, default_value_t = 0.0)]
    pub mu: f64,
    /// Compute model confidence once per epoch instead of every step.
    #[arg(long)]
    pub freeze_confidence: bool,
    /// Training log TSV (stdout when omitted).
    #[arg(long)]
    pub log: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum ExperimentCommand {
    /// Weighted vs unweighted accuracy under label corruption.
    NoiseRobustness(NoiseArgs),
}

#[derive(Debug, Args)]
pub struct NoiseArgs {
    #[arg(long, default_value_t = 10)]
    pub seeds: u64,
    #[arg(long, default_value_t = 0)]
    pub first_seed: u64,
    #[arg(long, default_value_t = 0.3)]
    pub corruption: f64,
    /// Replace every static score by 1 and hold lambda at 1.
    #[arg(long)]
    pub force_unit_confidence: bool,
}

#[derive(Debug, Args)]
pub struct WerArgs {
    /// Reference transcripts, one per line.
    #[arg(long = "ref")]
    pub reference: PathBuf,
    /// Hypotheses, line-aligned with the reference.
    #[arg(long)]
    pub hyp: PathBuf,
    /// Print per-line counts before the corpus total.
    #[arg(long)]
    pub per_utt: bool,
}

#[derive(Debug, Args)]
pub struct GenCorpusArgs {
    #[arg(long, default_value_t = 2000)]
    pub sentences: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
    /// Also write the grammar vocabulary, one word per line.
    #[arg(long)]
    pub lexicon_out: Option<PathBuf>,
    /// Word corruption probability for the noisy copy.
    #[arg(long, default_value_t = 0.2, requires = "corrupt_out")]
    pub corrupt: f64,
    /// Noisy copy as `utt_id<TAB>words`, ids `s<line>`.
    #[arg(long)]
    pub corrupt_out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProfileArg {
    /// All three scores flag corrupted samples.
    All,
    /// Only the perceptual score does.
    Perceptual,
}

#[derive(Debug, Args)]
pub struct GenDataArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 0.3)]
    pub corruption: f64,
    #[arg(long, value_enum, default_value_t = ProfileArg::All)]
    pub profile: ProfileArg,
    /// Training split.
    #[arg(long)]
    pub out: PathBuf,
    /// Clean test split.
    #[arg(long)]
    pub test_out: Option<PathBuf>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| io_error(path, e))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| io_error(p, e)),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| io_error(Path::new("<stdout>"), e))
        }
    }
}

fn audio_path(manifest: &Path, record: &CorpusRecord) -> PathBuf {
    let p = Path::new(&record.audio_path);
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        manifest.parent().unwrap_or(Path::new("")).join(p)
    }
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Features(a) => cmd_features(&a),
        Command::Score(a) => cmd_score(&a),
        Command::Lm(LmCommand::Train(a)) => cmd_lm_train(&a),
        Command::Lm(LmCommand::Ppl(a)) => cmd_lm_ppl(&a),
        Command::Lm(LmCommand::DumpCheck(a)) => cmd_lm_dump_check(&a),
        Command::Correct(a) => cmd_correct(&a),
        Command::Rescore(a) => cmd_rescore(&a),
        Command::Train(a) => cmd_train(&a),
        Command::Experiment(ExperimentCommand::NoiseRobustness(a)) => cmd_noise(&a),
        Command::Wer(a) => cmd_wer(&a),
        Command::GenCorpus(a) => cmd_gen_corpus(&a),
        Command::GenData(a) => cmd_gen_data(&a),
    }
}

fn cmd_features(a: &FeaturesArgs) -> Result<()> {
    let cfg = a.frame.config()?;
    let records = load_manifest(&a.manifest)?;
    let rows = records
        .iter()
        .map(|r| {
            let clip = decode_wav(&audio_path(&a.manifest, r))?;
            Ok((r.utt_id.clone(), extract_perceptual_features(&clip, &cfg)?))
        })
        .collect::<Result<Vec<_>>>()?;
    emit(a.out.as_deref(), &format_features(&rows))
}

fn cmd_score(a: &ScoreArgs) -> Result<()> {
    let aggregation = match &a.logits {
        Some(l) => Aggregation::Learnable(WeightLogits::new(l[0], l[1], l[2])),
        None => Aggregation::Fixed(AggregationWeights::new(a.alpha, a.beta, a.gamma)?),
    };
    let cfg = a.frame.config()?;
    let records = load_manifest(&a.manifest)?;
    let by_id: BTreeMap<String, _> = parse_features(&read(&a.features)?)?.into_iter().collect();
    let features = records
        .iter()
        .map(|r| {
            by_id.get(&r.utt_id).copied().ok_or_else(|| {
                HyconError::Invalid(format!("no feature row for record `{}`", r.utt_id))
            })
        })
        .collect::<Result<Vec<_>>>()?;

    // MFCCs are only needed for aligned pairs
    let index: BTreeMap<&str, &CorpusRecord> =
        records.iter().map(|r| (r.utt_id.as_str(), r)).collect();
    let mut mfccs: BTreeMap<String, MfccSequence> = BTreeMap::new();
    for r in records
        .iter()
        .filter(|r| r.source == SourceKind::SyntheticAligned)
    {
        let partner = r.aligned_ref_id.as_deref().and_then(|id| index.get(id));
        for rec in std::iter::once(r).chain(partner.copied()) {
            if !mfccs.contains_key(&rec.utt_id) {
                let clip = decode_wav(&audio_path(&a.manifest, rec))?;
                mfccs.insert(rec.utt_id.clone(), compute_mfcc(&clip, &cfg)?);
            }
        }
    }
    let hypotheses: BTreeMap<String, Vec<String>> = match &a.hyp {
        Some(p) => parse_transcripts(&read(p)?)?.into_iter().collect(),
        None => BTreeMap::new(),
    };
    let mut posteriors = BTreeMap::new();
    if let Some(dir) = &a.posteriors {
        if !dir.is_dir() {
            return Err(io_error(dir, std::io::Error::other("not a directory")));
        }
        for r in &records {
            let p = dir.join(format!("{}.tsv", r.utt_id));
            if p.is_file() {
                posteriors.insert(r.utt_id.clone(), parse_posteriors(&read(&p)?)?);
            }
        }
    }
    let input = ScoringInput {
        records: &records,
        features: &features,
        mfccs: &mfccs,
        hypotheses: &hypotheses,
        posteriors: &posteriors,
    };
    let opts = ScoringOptions {
        aggregation,
        lambda: a.lambda,
        allow_missing_hypothesis: a.allow_missing_hyp,
    };
    let reports = score_corpus(&input, &opts)?;
    emit(a.out.as_deref(), &format_report(&reports))
}

fn read_sentences(path: &Path) -> Result<Vec<String>> {
    Ok(read(path)?
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(str::to_string)
        .collect())
}

fn cmd_lm_train(a: &LmTrainArgs) -> Result<()> {
    let text = read_sentences(&a.text)?;
    let Some(orders) = &a.orders else {
        let model = train_lm(&text, a.order)?;
        return write_arpa(a.out.as_deref().expect("clap requires --out"), &model);
    };
    if orders.is_empty() {
        return Err(HyconError::Invalid("--orders is empty".into()));
    }
    if let Some(&bad) = orders.iter().find(|k| !(1..=MAX_ORDER).contains(*k)) {
        return Err(NGramError::BadOrder(bad).into());
    }
    let eval = match &a.eval {
        Some(p) => read_sentences(p)?,
        None => text.clone(),
    };
    let dir = a.out_dir.as_deref().expect("clap requires --out-dir");
    fs::create_dir_all(dir).map_err(|e| io_error(dir, e))?;
    let mut report = String::from("order\tperplexity\n");
    for &k in orders {
        let model = train_lm(&text, k)?;
        write_arpa(&dir.join(format!("order{k}.arpa")), &model)?;
        report.push_str(&format!("{k}\t{:.6}\n", perplexity(&model, &eval)?));
    }
    let tsv = dir.join("perplexity.tsv");
    fs::write(&tsv, &report).map_err(|e| io_error(&tsv, e))?;
    emit(None, &report)
}

fn cmd_lm_ppl(a: &LmPplArgs) -> Result<()> {
    let model = load_arpa(&a.model)?;
    let ppl = perplexity(&model, &read_sentences(&a.text)?)?;
    emit(None, &format!("{ppl:.6}\n"))
}

fn cmd_lm_dump_check(a: &LmDumpCheckArgs) -> Result<()> {
    let text = read(&a.model)?;
    let first = dump_arpa(&parse_arpa(&text)?);
    let second = dump_arpa(&parse_arpa(&first)?);
    if first != second {
        return Err(HyconError::Invalid(
            "dump/load round trip is not stable".into(),
        ));
    }
    let note = if first == text {
        "identical"
    } else {
        "stable (file is not in canonical form)"
    };
    emit(None, &format!("{note}\n"))
}

fn cmd_correct(a: &CorrectArgs) -> Result<()> {
    let model = load_arpa(&a.model)?;
    let lexicon = Lexicon::new(parse_lexicon(&read(&a.lexicon)?)?)?;
    let cfg = CorrectionConfig {
        max_char_edits: a.max_edits,
        edit_penalty: a.edit_penalty,
        beam_width: a.beam,
        lm_weight: a.lm_weight,
    };
    cfg.validate()?;
    let rows = parse_transcripts(&read(&a.hyp)?)?
        .into_iter()
        .map(|(id, words)| {
            if words.is_empty() {
                return Ok((id, words));
            }
            Ok((id, correct_transcript(&words, &model, &lexicon, &cfg)?))
        })
        .collect::<Result<Vec<_>>>()?;
    emit(a.out.as_deref(), &format_transcripts(&rows))
}

fn cmd_rescore(a: &RescoreArgs) -> Result<()> {
    let model = load_arpa(&a.model)?;
    let mut out = String::from("utt_id\tbest_index\tscore\twords\n");
    for (id, hyps) in parse_nbest(&read(&a.nbest)?)? {
        let best = rescore_nbest(&hyps, &model, a.lm_weight, a.length_bonus)?;
        let h = &hyps[best];
        out.push_str(&format!(
            "{id}\t{best}\t{:.6}\t{}\n",
            fused_score(h, &model, a.lm_weight, a.length_bonus),
            h.words.join(" ")
        ));
    }
    emit(a.out.as_deref(), &out)
}

fn cmd_train(a: &TrainArgs) -> Result<()> {
    let data = parse_dataset(&read(&a.data)?)?;
    let mode = match a.mode {
        ModeArg::Fixed => WeightMode::Fixed(AggregationWeights::new(a.alpha, a.beta, a.gamma)?),
        ModeArg::Learnable => {
            let l = a.logits.clone().unwrap_or_else(|| vec![0.0; 3]);
            WeightMode::Learnable(WeightLogits::new(l[0], l[1], l[2]))
        }
    };
    let cfg = TrainConfig {
        epochs: a.epochs,
        learning_rate: a.lr,
        logits_learning_rate: a.logits_lr,
        batch_size: a.batch_size,
        cosine_lr: !a.no_cosine,
        seed: a.seed,
        mode,
        schedule: AnnealSchedule {
            lambda_start: a.lambda_start,
            lambda_end: a.lambda_end,
            total_epochs: a.epochs,
        },
        mu: a.mu,
        freeze_confidence_per_epoch: a.freeze_confidence,
    };
    let outcome = train(&data, &cfg)?;
    emit(a.log.as_deref(), &format_train_log(&outcome.log))?;
    let acc = accuracy(&outcome.state.model, &data)?;
    eprintln!("training accuracy {acc:.4}");
    Ok(())
}

fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

fn cmd_noise(a: &NoiseArgs) -> Result<()> {
    if a.seeds == 0 {
        return Err(HyconError::Invalid("--seeds must be positive".into()));
    }
    let seeds: Vec<u64> = (a.first_seed..a.first_seed + a.seeds).collect();
    let outcomes = std::thread::scope(|scope| {
        let handles: Vec<_> = seeds
            .iter()
            .map(|&seed| {
                scope.spawn(move || {
                    let mut cfg = ExperimentConfig::new(seed, a.corruption);
                    cfg.force_unit_confidence = a.force_unit_confidence;
                    noise_robustness_experiment(&cfg)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("experiment thread panicked"))
            .collect::<std::result::Result<Vec<_>, _>>()
    })?;
    let mut out = String::from("seed\tacc_weighted\tacc_unweighted\n");
    for (seed, o) in seeds.iter().zip(&outcomes) {
        out.push_str(&format!(
            "{seed}\t{:.4}\t{:.4}\n",
            o.acc_weighted, o.acc_unweighted
        ));
    }
    let w: Vec<f64> = outcomes.iter().map(|o| o.acc_weighted).collect();
    let u: Vec<f64> = outcomes.iter().map(|o| o.acc_unweighted).collect();
    let (wm, ws) = mean_std(&w);
    let (um, us) = mean_std(&u);
    out.push_str(&format!("weighted\t{wm:.4} ± {ws:.4}\n"));
    out.push_str(&format!("unweighted\t{um:.4} ± {us:.4}\n"));
    out.push_str(&format!("gap\t{:.4}\n", wm - um));
    emit(None, &out)
}

fn cmd_wer(a: &WerArgs) -> Result<()> {
    let refs: Vec<String> = read(&a.reference)?.lines().map(str::to_string).collect();
    let hyps: Vec<String> = read(&a.hyp)?.lines().map(str::to_string).collect();
    if refs.len() != hyps.len() {
        return Err(HyconError::Invalid(format!(
            "reference has {} lines but hypothesis has {}",
            refs.len(),
            hyps.len()
        )));
    }
    let summaries = refs
        .iter()
        .zip(&hyps)
        .map(|(r, h)| align_lines(r, h))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let mut out = String::new();
    if a.per_utt {
        out.push_str("line\tsubstitutions\tinsertions\tdeletions\tref_len\twer\n");
        for (i, s) in summaries.iter().enumerate() {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{:.4}\n",
                i + 1,
                s.substitutions,
                s.insertions,
                s.deletions,
                s.ref_len,
                s.wer
            ));
        }
    }
    out.push_str(&format!("{:.4}\n", corpus_wer(&summaries)));
    emit(None, &out)
}

fn cmd_gen_corpus(a: &GenCorpusArgs) -> Result<()> {
    let corpus = generate_corpus(a.seed, a.sentences);
    let text: String = corpus.iter().map(|s| format!("{s}\n")).collect();
    emit(Some(&a.out), &text)?;
    if let Some(p) = &a.lexicon_out {
        let words: String = grammar_vocabulary()
            .iter()
            .map(|w| format!("{w}\n"))
            .collect();
        emit(Some(p), &words)?;
    }
    if let Some(p) = &a.corrupt_out {
        if !(0.0..=1.0).contains(&a.corrupt) {
            return Err(HyconError::Invalid("--corrupt must lie in [0, 1]".into()));
        }
        let noisy = corrupt_sentences(&corpus, a.corrupt, a.seed.wrapping_add(1));
        let rows: Vec<(String, Vec<String>)> = noisy
            .iter()
            .enumerate()
            .map(|(i, s)| {
                (
                    format!("s{}", i + 1),
                    s.split(' ').map(str::to_string).collect(),
                )
            })
            .collect();
        emit(Some(p), &format_transcripts(&rows))?;
    }
    Ok(())
}

fn cmd_gen_data(a: &GenDataArgs) -> Result<()> {
    let profile = match a.profile {
        ProfileArg::All => ScoreProfile::AllInformative,
        ProfileArg::Perceptual => ScoreProfile::PerceptualOnly,
    };
    let data = generate_noisy_clusters(a.seed, a.corruption, profile)?;
    emit(Some(&a.out), &format_dataset(&data.train))?;
    if let Some(p) = &a.test_out {
        emit(Some(p), &format_dataset(&data.test))?;
    }
    Ok(())
}
