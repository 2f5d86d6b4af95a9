//! Flat `key = value` experiment configuration.
//!
//! Blank lines and lines starting with `#` are ignored. Lists are comma
//! separated. Keys:
//!
//! | key | meaning | default |
//! |-----|---------|---------|
//! | `problem` | `lseg`, `szbt`, `lsqr`, `lrecw`, `lrec2` | required |
//! | `n` | map sizes | required |
//! | `d` | LRECW widths; a list with a single `n` sweeps over `d` | `2` |
//! | `h`, `w` | LREC2 minimum height and width | `1` |
//! | `trials` | trials per grid point | `100` |
//! | `seed` | master seed | `1` |
//! | `generator` | `random`, `adversarial`, `promise` | `random` (`promise` for LREC2) |
//! | `p_one`, `p_two` | cell probabilities of random maps | `0.02`, `0.05` |
//! | `k`, `t` | adversarial parameters | derived from `n` |
//! | `k_frac`, `t_frac` | adversarial parameters as fractions of `n` | `0.7`, `0.85` |
//! | `attempts`, `max_side` | promise generator | `n`, `n/4` |
//! | `mode` | `exact` or `estimated` | `exact` |
//! | `samples` | samples of the estimated mode | `1000` |
//! | `boost` | repetitions of boosted probes | `ceil(2 log2 log2 n)` |
//! | `threads` | worker threads, 0 for all cores | `0` |

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::algos::SimParams;
use crate::error::{Error, Result};
use crate::qcore::AmplifyMode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Problem {
    Lseg,
    Szbt,
    Lsqr,
    Lrecw,
    Lrec2,
}

impl Problem {
    pub fn name(&self) -> &'static str {
        match self {
            Problem::Lseg => "lseg",
            Problem::Szbt => "szbt",
            Problem::Lsqr => "lsqr",
            Problem::Lrecw => "lrecw",
            Problem::Lrec2 => "lrec2",
        }
    }

    pub fn is_2d(&self) -> bool {
        matches!(self, Problem::Lsqr | Problem::Lrecw | Problem::Lrec2)
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Problem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_lowercase().as_str() {
            "lseg" => Problem::Lseg,
            "szbt" => Problem::Szbt,
            "lsqr" => Problem::Lsqr,
            "lrecw" => Problem::Lrecw,
            "lrec2" => Problem::Lrec2,
            other => return Err(Error::Config(format!("unknown problem {other:?}"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    Random,
    Adversarial,
    Promise,
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_lowercase().as_str() {
            "random" => Generator::Random,
            "adversarial" => Generator::Adversarial,
            "promise" => Generator::Promise,
            other => return Err(Error::Config(format!("unknown generator {other:?}"))),
        })
    }
}

/// What the sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    N,
    D,
}

impl Axis {
    pub fn name(&self) -> &'static str {
        match self {
            Axis::N => "n",
            Axis::D => "d",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub problem: Problem,
    pub n: Vec<usize>,
    pub d: Vec<usize>,
    pub h: usize,
    pub w: usize,
    pub trials: usize,
    pub seed: u64,
    pub generator: Generator,
    pub p_one: f64,
    pub p_two: f64,
    pub k: Option<isize>,
    pub t: Option<isize>,
    pub k_frac: f64,
    pub t_frac: f64,
    pub attempts: Option<usize>,
    pub max_side: Option<usize>,
    pub params: SimParams,
    pub threads: usize,
}

impl Config {
    pub fn new(problem: Problem, n: Vec<usize>) -> Self {
        Config {
            problem,
            n,
            d: vec![2],
            h: 1,
            w: 1,
            trials: 100,
            seed: 1,
            generator: if problem == Problem::Lrec2 { Generator::Promise } else { Generator::Random },
            p_one: 0.02,
            p_two: 0.05,
            k: None,
            t: None,
            k_frac: 0.7,
            t_frac: 0.85,
            attempts: None,
            max_side: None,
            params: SimParams::default(),
            threads: 0,
        }
    }

    pub fn axis(&self) -> Axis {
        if self.problem == Problem::Lrecw && self.d.len() > 1 {
            Axis::D
        } else {
            Axis::N
        }
    }

    /// Grid points `(n, d)` in sweep order.
    pub fn points(&self) -> Vec<(usize, usize)> {
        match self.axis() {
            Axis::D => self.d.iter().map(|&d| (self.n[0], d)).collect(),
            Axis::N => self.n.iter().map(|&n| (n, self.d[0])).collect(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if self.n.is_empty() || self.n.contains(&0) {
            return bad("n needs at least one positive size".into());
        }
        if self.d.is_empty() || self.d.contains(&0) {
            return bad("d needs positive widths".into());
        }
        if self.problem == Problem::Lrecw && self.d.len() > 1 && self.n.len() > 1 {
            return bad("sweep either n or d, not both".into());
        }
        if self.trials == 0 {
            return bad("trials must be positive".into());
        }
        if self.h == 0 || self.w == 0 {
            return bad("h and w must be positive".into());
        }
        for (x, name) in [(self.p_one, "p_one"), (self.p_two, "p_two"), (self.k_frac, "k_frac"), (self.t_frac, "t_frac")] {
            if !(0.0..=1.0).contains(&x) {
                return bad(format!("{name} = {x} outside [0, 1]"));
            }
        }
        if let AmplifyMode::Estimated { samples: 0 } = self.params.amplify {
            return bad("samples must be positive".into());
        }
        for (n, d) in self.points() {
            if self.problem == Problem::Lrecw && d > n {
                return bad(format!("d = {d} exceeds n = {n}"));
            }
            if self.problem == Problem::Lrec2 && (self.h > n || self.w > n) {
                return bad(format!("h, w must not exceed n = {n}"));
            }
        }
        let ok = match (self.problem, self.generator) {
            (_, Generator::Random) => self.problem != Problem::Lrec2,
            (Problem::Szbt, Generator::Adversarial) => false,
            (_, Generator::Adversarial) => true,
            (Problem::Lrec2, Generator::Promise) => true,
            (_, Generator::Promise) => false,
        };
        if !ok {
            return bad(format!("generator {:?} does not apply to {}", self.generator, self.problem));
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<Config> {
        let mut kv: BTreeMap<String, (usize, String)> = BTreeMap::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return Err(Error::Config(format!("line {}: expected key = value", no + 1)));
            };
            let key = k.trim().to_ascii_lowercase();
            if kv.insert(key.clone(), (no + 1, v.trim().to_string())).is_some() {
                return Err(Error::Config(format!("line {}: duplicate key {key}", no + 1)));
            }
        }
        let take = |kv: &mut BTreeMap<String, (usize, String)>, key: &str| kv.remove(key).map(|(_, v)| v);
        let problem: Problem = take(&mut kv, "problem")
            .ok_or_else(|| Error::Config("missing key problem".into()))?
            .parse()?;
        let n = list(&take(&mut kv, "n").ok_or_else(|| Error::Config("missing key n".into()))?, "n")?;
        let mut cfg = Config::new(problem, n);
        if let Some(v) = take(&mut kv, "d") {
            cfg.d = list(&v, "d")?;
        }
        if let Some(v) = take(&mut kv, "h") {
            cfg.h = scalar(&v, "h")?;
        }
        if let Some(v) = take(&mut kv, "w") {
            cfg.w = scalar(&v, "w")?;
        }
        if let Some(v) = take(&mut kv, "trials") {
            cfg.trials = scalar(&v, "trials")?;
        }
        if let Some(v) = take(&mut kv, "seed") {
            cfg.seed = scalar(&v, "seed")?;
        }
        if let Some(v) = take(&mut kv, "generator") {
            cfg.generator = v.parse()?;
        }
        if let Some(v) = take(&mut kv, "p_one") {
            cfg.p_one = scalar(&v, "p_one")?;
        }
        if let Some(v) = take(&mut kv, "p_two") {
            cfg.p_two = scalar(&v, "p_two")?;
        }
        if let Some(v) = take(&mut kv, "k") {
            cfg.k = Some(scalar(&v, "k")?);
        }
        if let Some(v) = take(&mut kv, "t") {
            cfg.t = Some(scalar(&v, "t")?);
        }
        if let Some(v) = take(&mut kv, "k_frac") {
            cfg.k_frac = scalar(&v, "k_frac")?;
        }
        if let Some(v) = take(&mut kv, "t_frac") {
            cfg.t_frac = scalar(&v, "t_frac")?;
        }
        if let Some(v) = take(&mut kv, "attempts") {
            cfg.attempts = Some(scalar(&v, "attempts")?);
        }
        if let Some(v) = take(&mut kv, "max_side") {
            cfg.max_side = Some(scalar(&v, "max_side")?);
        }
        let samples = match take(&mut kv, "samples") {
            Some(v) => scalar(&v, "samples")?,
            None => 1000,
        };
        if let Some(v) = take(&mut kv, "mode") {
            cfg.params.amplify = match v.to_ascii_lowercase().as_str() {
                "exact" => AmplifyMode::Exact,
                "estimated" => AmplifyMode::Estimated { samples },
                other => return Err(Error::Config(format!("unknown mode {other:?}"))),
            };
        }
        if let Some(v) = take(&mut kv, "boost") {
            cfg.params.boost = Some(scalar(&v, "boost")?);
        }
        if let Some(v) = take(&mut kv, "threads") {
            cfg.threads = scalar(&v, "threads")?;
        }
        if let Some((key, (line, _))) = kv.into_iter().next() {
            return Err(Error::Config(format!("line {line}: unknown key {key}")));
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn read(path: &Path) -> Result<Config> {
        Config::parse(&std::fs::read_to_string(path)?)
    }
}

fn scalar<T: FromStr>(v: &str, key: &str) -> Result<T> {
    v.trim().parse().map_err(|_| Error::Config(format!("bad value {v:?} for {key}")))
}

fn list(v: &str, key: &str) -> Result<Vec<usize>> {
    v.split(',').filter(|s| !s.trim().is_empty()).map(|s| scalar(s, key)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_full_config() {
        let cfg = Config::parse(
            "# sweep\nproblem = lseg\nn = 256, 512,1024\ntrials = 20\nseed = 7\np_one = 0.01\nmode = estimated\nsamples = 50\nboost = 3\n",
        )
        .unwrap();
        assert_eq!(cfg.problem, Problem::Lseg);
        assert_eq!(cfg.n, vec![256, 512, 1024]);
        assert_eq!((cfg.trials, cfg.seed, cfg.p_one), (20, 7, 0.01));
        assert_eq!(cfg.params.amplify, AmplifyMode::Estimated { samples: 50 });
        assert_eq!(cfg.params.boost, Some(3));
        assert_eq!(cfg.axis(), Axis::N);
        assert_eq!(cfg.points(), vec![(256, 2), (512, 2), (1024, 2)]);
    }

    #[test]
    fn width_sweep() {
        let cfg = Config::parse("problem = lrecw\nn = 128\nd = 2,4,8\n").unwrap();
        assert_eq!(cfg.axis(), Axis::D);
        assert_eq!(cfg.points(), vec![(128, 2), (128, 4), (128, 8)]);
        assert_eq!(Config::parse("problem = lrec2\nn = 16\n").unwrap().generator, Generator::Promise);
    }

    #[test]
    fn rejects_bad_configs() {
        for text in [
            "n = 4",
            "problem = lseg",
            "problem = nope\nn = 4",
            "problem = lseg\nn = 4\ncolour = red",
            "problem = lseg\nn = 4\nn = 8",
            "problem = lseg\nn = 0",
            "problem = lseg\nn = four",
            "problem = lseg\nn = 4\np_one = 2",
            "problem = lseg\nn = 4\ntrials = 0",
            "problem = lrecw\nn = 4,8\nd = 2,3",
            "problem = lrecw\nn = 4\nd = 5",
            "problem = szbt\nn = 4\ngenerator = adversarial",
            "problem = lrec2\nn = 4\ngenerator = random",
            "problem = lseg\nn = 4\nmode = fuzzy",
            "problem = lseg\nn = 4\nmode = estimated\nsamples = 0",
            "problem = lseg\nn = 4\njunk",
        ] {
            assert!(matches!(Config::parse(text), Err(Error::Config(_))), "{text:?}");
        }
    }
}
