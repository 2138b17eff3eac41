use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use graphcode::c1::intersection_counts_hold;
use graphcode::c2::{adjacency_bits, cover_weight};
use graphcode::double::sets::diagonal_meets_failure_once;
use graphcode::double::LoopParams;
use graphcode::gflinalg::GfMatrix;
use graphcode::graph::{parse_graph_file, GraphFile};
use graphcode::{DirectedGraph, Error};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::code::AnyCode;
use crate::CodeArgs;

pub struct CliError {
    pub status: u8,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError { status: 2, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::BeyondBudget { .. }
            | Error::NotCodeword(_)
            | Error::NotPeelable(_)
            | Error::Underdetermined { .. }
            | Error::Inconsistent
            | Error::Deadlock(_)
            | Error::Invariant(_) => 1,
            _ => 2,
        };
        CliError { status, message: e.to_string() }
    }
}

type CliResult = Result<u8, CliError>;

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<GraphFile, CliError> {
    Ok(parse_graph_file(&read(path)?)?)
}

/// Writes the graph to `out`, or to stdout with the report moved to stderr.
fn emit(out: Option<&Path>, graph: &GraphFile, report: &str) -> Result<(), CliError> {
    match out {
        Some(path) => {
            fs::write(path, graph.to_text())
                .map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display())))?;
            print!("{report}");
        }
        None => {
            print!("{}", graph.to_text());
            eprint!("{report}");
        }
    }
    Ok(())
}

fn build(args: &CodeArgs, file_n: Option<usize>) -> Result<AnyCode, CliError> {
    let n = match (args.n, file_n) {
        (Some(a), Some(b)) if a != b => return Err(CliError::usage(format!("--n {a} but the file has n={b}"))),
        (Some(n), _) | (None, Some(n)) => n,
        (None, None) => return Err(CliError::usage("--n is required")),
    };
    Ok(AnyCode::new(args.code, n, args.rho)?)
}

fn join(nodes: &[usize]) -> String {
    nodes.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

fn header(args: &CodeArgs, code: &AnyCode) -> String {
    format!("code={}\nn={}\nrho={}\n", args.code.name(), code.n(), code.rho())
}

pub fn encode(args: &CodeArgs, input: Option<&Path>, out: Option<&Path>, seed: u64) -> CliResult {
    let code = build(args, None)?;
    let info = match input {
        Some(path) => code.parse_info(&read(path)?)?,
        None => code.random_info(&mut ChaCha8Rng::seed_from_u64(seed)),
    };
    let g = code.encode(&info)?;
    let (k, r, cells) = (code.dimension(), code.redundancy(), code.cells());
    let report = format!("{}k_G={k}\nr_G={r}\nrate={:.6}\n", header(args, &code), k as f64 / cells as f64);
    emit(out, &g, &report)?;
    Ok(0)
}

pub fn erase(input: &Path, out: Option<&Path>, nodes: &[usize]) -> CliResult {
    let g = read_graph(input)?.erase_nodes(nodes)?;
    let unknown = match &g {
        GraphFile::Directed(d) => d.unknown_count(),
        GraphFile::Undirected(u) => u.unknown_count(),
    };
    emit(out, &g, &format!("erased={}\nunknown={unknown}\n", join(nodes)))?;
    Ok(0)
}

pub fn decode(args: &CodeArgs, input: &Path, out: Option<&Path>, nodes: &[usize]) -> CliResult {
    let g = read_graph(input)?;
    let code = build(args, Some(g.n()))?;
    let decoded = code.decode(&g, nodes)?;
    emit(out, &decoded, &format!("{}failed={}\ndecoded=true\n", header(args, &code), join(nodes)))?;
    Ok(0)
}

pub fn verify(args: &CodeArgs, input: &Path) -> CliResult {
    let g = read_graph(input)?;
    let code = build(args, Some(g.n()))?;
    let ok = code.verify(&g)?;
    println!("{}valid={ok}", header(args, &code));
    Ok(if ok { 0 } else { 1 })
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

/// Decodes one erased random codeword; true iff the original comes back.
fn trial(code: &AnyCode, rng: &mut ChaCha8Rng, failed: &[usize]) -> bool {
    let Ok(g) = code.encode(&code.random_info(rng)) else {
        return false;
    };
    let Ok(erased) = g.erase_nodes(failed) else {
        return false;
    };
    code.decode(&erased, failed).is_ok_and(|d| d == g)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    (k - 1..n)
        .flat_map(|last| {
            subsets(last, k - 1).into_iter().map(move |mut s| {
                s.push(last);
                s
            })
        })
        .collect()
}

pub fn audit(args: &CodeArgs, exhaustive: bool, seed: u64) -> CliResult {
    let code = build(args, None)?;
    let (n, rho) = (code.n(), code.rho());
    let cs = code.constraints();
    let rank = cs.rank();
    let dim = cs.nullspace_dim();
    let (r, bound) = (code.redundancy(), code.bound());
    let mut report = header(args, &code);
    let mut ok = dim == code.dimension();
    let relation = match r.cmp(&bound) {
        std::cmp::Ordering::Less => "<",
        std::cmp::Ordering::Equal => "=",
        std::cmp::Ordering::Greater => ">",
    };
    let _ = writeln!(report, "constraints={}\nrank={rank}\ndimension={dim}", cs.len());
    let _ = writeln!(
        report,
        "expected_dimension={}\ndimension_check={}",
        code.dimension(),
        verdict(dim == code.dimension())
    );
    let _ = writeln!(report, "r_G={r}\nbound={bound}\noptimal={} ({r} {relation} {bound})", r == bound);

    match &code {
        AnyCode::C1(_) => {
            let sets = subsets(n, rho);
            let good =
                sets.iter().filter(|j| intersection_counts_hold(n, j).is_ok_and(|c| c.iter().all(|&b| b))).count();
            ok &= good == sets.len();
            let _ = writeln!(report, "intersection_counts={} ({good}/{})", verdict(good == sets.len()), sets.len());
        }
        AnyCode::C2(c) => {
            let designed = 2 * rho + 1;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let k = c.dimension();
            let words: Box<dyn Iterator<Item = DirectedGraph>> = if k <= 12 {
                Box::new((1u64..1 << k).map(|m| c.encode_bits(&(0..k).map(|t| m >> t & 1 == 1).collect::<Vec<_>>())))
            } else {
                let samples: Vec<Vec<bool>> = (0..1000)
                    .map(|_| loop {
                        let bits: Vec<bool> = (0..k).map(|_| rng.gen()).collect();
                        if bits.iter().any(|&b| b) {
                            break bits;
                        }
                    })
                    .collect();
                Box::new(samples.into_iter().map(|b| c.encode_bits(&b)))
            };
            let (mut count, mut min_rank, mut min_cover) = (0usize, usize::MAX, usize::MAX);
            for g in words {
                let bits = adjacency_bits(&g);
                min_rank = min_rank.min(bits.rank());
                min_cover = min_cover.min(cover_weight(&bits));
                count += 1;
            }
            let good = min_rank >= designed && min_cover >= designed;
            ok &= good;
            let mode = if k <= 12 { "exhaustive" } else { "sampled" };
            let _ = writeln!(report, "weight_audit={mode} ({count} nonzero codewords)");
            let _ = writeln!(
                report,
                "min_rank_weight={min_rank}\nmin_cover_weight={min_cover}\ndesigned_distance={designed}"
            );
            let _ = writeln!(report, "weights={}", verdict(good));
        }
        AnyCode::Cg4(_) | AnyCode::Undirected(_) => {
            let pairs = subsets(n - 2, 2);
            let single_hit =
                pairs.iter().filter(|p| diagonal_meets_failure_once(n, p[0], p[1]).unwrap_or(false)).count();
            let split = pairs
                .iter()
                .filter(|p| LoopParams::new(n, p[0], p[1]).is_ok_and(|lp| lp.self_loop_split_holds()))
                .count();
            ok &= single_hit == pairs.len() && split == pairs.len() && rank == cs.len();
            let _ = writeln!(report, "independent_constraints={}", verdict(rank == cs.len()));
            let _ = writeln!(
                report,
                "diagonal_single_hit={} ({single_hit}/{})",
                verdict(single_hit == pairs.len()),
                pairs.len()
            );
            let _ = writeln!(report, "self_loop_split={} ({split}/{})", verdict(split == pairs.len()), pairs.len());
        }
    }

    if exhaustive {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sets = subsets(n, rho);
        let good = sets.iter().filter(|f| trial(&code, &mut rng, f)).count();
        ok &= good == sets.len();
        let label =
            if matches!(code, AnyCode::C1(_) | AnyCode::C2(_)) { "failure_sets_decoded" } else { "pairs_decoded" };
        let _ = writeln!(report, "{label}={good}/{}", sets.len());
        if rho == 2 {
            let singles = (0..n).filter(|&t| trial(&code, &mut rng, &[t])).count();
            ok &= singles == n;
            let _ = writeln!(report, "singles_decoded={singles}/{n}");
        }
    }
    let _ = writeln!(report, "audit={}", verdict(ok));
    print!("{report}");
    Ok(if ok { 0 } else { 1 })
}

pub fn simulate(args: &CodeArgs, trials: usize, seed: u64) -> CliResult {
    if trials == 0 {
        return Err(CliError::usage("--trials must be at least 1"));
    }
    let code = build(args, None)?;
    let (n, rho) = (code.n(), code.rho());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut successes = 0;
    for _ in 0..trials {
        let size = rng.gen_range(1..=rho);
        let mut failed = sample(&mut rng, n, size).into_vec();
        failed.sort_unstable();
        successes += trial(&code, &mut rng, &failed) as usize;
    }
    println!(
        "{}seed={seed}\ntrials={trials}\nsuccesses={successes}\nfailures={}",
        header(args, &code),
        trials - successes
    );
    Ok(if successes == trials { 0 } else { 1 })
}
