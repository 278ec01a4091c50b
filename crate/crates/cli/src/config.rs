//! Experiment configuration files. See `docs/grammar.md`.

use std::collections::HashMap;

use ndds_core::oracle::Theorem;
use ndds_core::syntax::Parser;
use ndds_core::{EPSet, Error, Region, Result, Space, SystemDescriptor, Vector};

/// Bound parameters. `None` falls through to the next layer: query
/// options, then command-line flags, then `set` lines, then defaults.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Bounds {
    pub resolution: Option<u32>,
    pub p_max: Option<usize>,
    pub a_max: Option<u64>,
    pub n_max: Option<u64>,
    pub horizon: Option<usize>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub points: Option<usize>,
}

impl Bounds {
    /// `self` where set, otherwise `fallback`.
    pub fn over(&self, fallback: &Bounds) -> Bounds {
        Bounds {
            resolution: self.resolution.or(fallback.resolution),
            p_max: self.p_max.or(fallback.p_max),
            a_max: self.a_max.or(fallback.a_max),
            n_max: self.n_max.or(fallback.n_max),
            horizon: self.horizon.or(fallback.horizon),
            samples: self.samples.or(fallback.samples),
            seed: self.seed.or(fallback.seed),
            points: self.points.or(fallback.points),
        }
    }

    pub fn defaults() -> Bounds {
        Bounds {
            resolution: Some(1),
            p_max: Some(3),
            a_max: Some(3),
            n_max: Some(3),
            horizon: Some(20),
            samples: Some(2000),
            seed: Some(1),
            points: Some(4),
        }
    }

    pub fn resolution(&self) -> u32 {
        self.resolution.unwrap_or(1)
    }
    pub fn p_max(&self) -> usize {
        self.p_max.unwrap_or(3)
    }
    pub fn a_max(&self) -> u64 {
        self.a_max.unwrap_or(3)
    }
    pub fn n_max(&self) -> u64 {
        self.n_max.unwrap_or(3)
    }
    pub fn horizon(&self) -> usize {
        self.horizon.unwrap_or(20)
    }

    /// Reads one `key=value` option; `false` if the key is not a bound.
    fn set(&mut self, key: &str, p: &mut Parser) -> Result<bool> {
        match key {
            "res" => self.resolution = Some(positive_u32(p)?),
            "p_max" => self.p_max = Some(p.positive()? as usize),
            "a_max" => self.a_max = Some(p.positive()?),
            "n_max" => self.n_max = Some(p.positive()?),
            "horizon" => self.horizon = Some(p.positive()? as usize),
            "samples" => self.samples = Some(p.uint()? as usize),
            "seed" => self.seed = Some(p.uint()?),
            "N" => self.points = Some(p.positive()? as usize),
            _ => return Ok(false),
        }
        Ok(true)
    }
}

fn positive_u32(p: &mut Parser) -> Result<u32> {
    let v = p.positive()?;
    u32::try_from(v).map_err(|_| p.error("value too large"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QueryKind {
    Hitting {
        sys: SystemDescriptor,
        a: Region,
        b: Region,
    },
    Transitive {
        sys: SystemDescriptor,
    },
    VectorTransitive {
        sys: SystemDescriptor,
        a: Vector,
    },
    Multi {
        sys: SystemDescriptor,
    },
    StrongMulti {
        sys: SystemDescriptor,
    },
    Totally {
        sys: SystemDescriptor,
    },
    WeaklyMixing {
        sys: SystemDescriptor,
        order: usize,
    },
    StronglyMixing {
        sys: SystemDescriptor,
    },
    Family {
        sys: SystemDescriptor,
        a: Vector,
    },
    FamilyInfty {
        sys: SystemDescriptor,
    },
    Disjoint {
        first: SystemDescriptor,
        second: SystemDescriptor,
    },
    Battery {
        sys: SystemDescriptor,
        enriched: bool,
    },
    Sweep {
        theorem: Theorem,
    },
}

impl QueryKind {
    pub fn name(&self) -> &'static str {
        match self {
            QueryKind::Hitting { .. } => "hitting",
            QueryKind::Transitive { .. } => "transitive",
            QueryKind::VectorTransitive { .. } => "vector-transitive",
            QueryKind::Multi { .. } => "multi",
            QueryKind::StrongMulti { .. } => "strong-multi",
            QueryKind::Totally { .. } => "totally",
            QueryKind::WeaklyMixing { .. } => "weakly-mixing",
            QueryKind::StronglyMixing { .. } => "strongly-mixing",
            QueryKind::Family { .. } => "family",
            QueryKind::FamilyInfty { .. } => "family-infty",
            QueryKind::Disjoint { .. } => "disjoint",
            QueryKind::Battery { .. } => "battery",
            QueryKind::Sweep { .. } => "sweep",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expectation {
    Proven,
    Refuted,
    Unknown,
    /// Anything but Refuted.
    Pass,
    Equals(EPSet),
    Excludes(EPSet),
    Empty,
    Nonempty,
    Cofinite,
    /// Sweep found no counterexample.
    Clean,
    /// Sweep found at least one counterexample.
    Counterexample,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Query {
    pub line: usize,
    /// Source text after `query`, trimmed, without the expectation.
    pub text: String,
    pub kind: QueryKind,
    pub bounds: Bounds,
    pub expect: Option<(Expectation, String)>,
}

#[derive(Debug, Clone, Default)]
pub struct ExperimentConfig {
    pub settings: Bounds,
    pub systems: Vec<(String, SystemDescriptor)>,
    pub opens: Vec<(String, String)>,
    pub queries: Vec<Query>,
}

/// Named open: source text and the position it was defined at, read
/// against whatever space the name is used in.
#[derive(Debug, Clone)]
struct OpenDef {
    src: String,
    line: usize,
    offset: usize,
}

impl ExperimentConfig {
    pub fn parse(src: &str) -> Result<ExperimentConfig> {
        let mut cfg = ExperimentConfig::default();
        let mut systems: HashMap<String, SystemDescriptor> = HashMap::new();
        let mut opens: HashMap<String, OpenDef> = HashMap::new();
        for (idx, raw) in src.lines().enumerate() {
            let line = idx + 1;
            let body = raw.split('#').next().unwrap_or("");
            if body.trim().is_empty() {
                continue;
            }
            let mut p = Parser::new(body, line, 0);
            let at = p.mark();
            let keyword = p.ident()?;
            match keyword {
                "system" => {
                    let name = definition_name(&mut p, &systems, |n| opens.contains_key(n))?;
                    let lookup = |n: &str| systems.get(n).cloned();
                    let sys = p.system(&lookup)?;
                    p.finish()?;
                    cfg.systems.push((name.clone(), sys.clone()));
                    systems.insert(name, sys);
                }
                "open" => {
                    let name = definition_name(&mut p, &opens, |n| systems.contains_key(n))?;
                    p.skip_ws();
                    let rest = body.trim_start_matches(|c: char| c != '=')[1..].trim_start();
                    let offset = body.len() - rest.len();
                    let rest = rest.trim_end();
                    if rest.is_empty() {
                        return Err(p.error("expected an open set"));
                    }
                    cfg.opens.push((name.clone(), rest.to_string()));
                    opens.insert(
                        name,
                        OpenDef {
                            src: rest.to_string(),
                            line,
                            offset,
                        },
                    );
                }
                "set" => {
                    while !p.at_end() {
                        let key_at = p.mark();
                        let key = p.ident()?;
                        p.expect("=")?;
                        if !cfg.settings.set(key, &mut p)? {
                            return Err(p.error_at(key_at, format!("unknown setting `{key}`")));
                        }
                    }
                }
                "query" => {
                    let text_start = body.len() - body.trim_start().len() + "query".len();
                    let query = parse_query(&mut p, line, &body[text_start..], &systems, &opens)?;
                    cfg.queries.push(query);
                }
                other => return Err(p.error_at(at, format!("unknown statement `{other}`"))),
            }
        }
        Ok(cfg)
    }
}

fn definition_name<T>(p: &mut Parser, same: &HashMap<String, T>, other: impl Fn(&str) -> bool) -> Result<String> {
    let name = p.ident()?.to_string();
    if same.contains_key(&name) || other(&name) {
        return Err(p.error(format!("`{name}` is already defined")));
    }
    p.expect("=")?;
    Ok(name)
}

fn lookup_open(opens: &HashMap<String, OpenDef>, depth: usize) -> impl Fn(&str, &Space) -> Result<Region> + '_ {
    move |name: &str, space: &Space| {
        let def = opens
            .get(name)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown open set `{name}`")))?;
        if depth > 16 {
            return Err(Error::InvalidArgument(format!("open set `{name}` refers to itself")));
        }
        let mut p = Parser::new(&def.src, def.line, def.offset);
        let inner = lookup_open(opens, depth + 1);
        let r = p.region(space, &inner)?;
        p.finish()?;
        Ok(r)
    }
}

fn parse_query(
    p: &mut Parser,
    line: usize,
    text: &str,
    systems: &HashMap<String, SystemDescriptor>,
    opens: &HashMap<String, OpenDef>,
) -> Result<Query> {
    let lookup = |n: &str| systems.get(n).cloned();
    let regions = lookup_open(opens, 0);
    let at = p.mark();
    let kind_name = p.ident()?;
    let kind = match kind_name {
        "hitting" => {
            let sys = p.system(&lookup)?;
            let space = sys.space();
            let a = nonempty(p, |p| p.region(&space, &regions))?;
            let b = nonempty(p, |p| p.region(&space, &regions))?;
            QueryKind::Hitting { sys, a, b }
        }
        "transitive" => QueryKind::Transitive {
            sys: p.system(&lookup)?,
        },
        "vector-transitive" => {
            let sys = p.system(&lookup)?;
            QueryKind::VectorTransitive { sys, a: p.vector()? }
        }
        "multi" => QueryKind::Multi {
            sys: p.system(&lookup)?,
        },
        "strong-multi" => QueryKind::StrongMulti {
            sys: p.system(&lookup)?,
        },
        "totally" => QueryKind::Totally {
            sys: p.system(&lookup)?,
        },
        "weakly-mixing" => {
            let sys = p.system(&lookup)?;
            p.skip_ws();
            let order = p.positive()? as usize;
            if order < 2 {
                return Err(p.error("weak mixing order must be >= 2"));
            }
            QueryKind::WeaklyMixing { sys, order }
        }
        "strongly-mixing" => QueryKind::StronglyMixing {
            sys: p.system(&lookup)?,
        },
        "family" => {
            let sys = p.system(&lookup)?;
            QueryKind::Family { sys, a: p.vector()? }
        }
        "family-infty" => QueryKind::FamilyInfty {
            sys: p.system(&lookup)?,
        },
        "disjoint" => {
            let first = p.system(&lookup)?;
            let second = p.system(&lookup)?;
            QueryKind::Disjoint { first, second }
        }
        "battery" => {
            let sys = p.system(&lookup)?;
            let enriched = p.peek_ident() == Some("enriched");
            if enriched {
                p.ident()?;
            }
            QueryKind::Battery { sys, enriched }
        }
        "sweep" => {
            p.skip_ws();
            let label: String = {
                let save = p.error("expected a theorem label");
                let word = p.ident().map_err(|_| save)?;
                word.to_string()
            };
            let theorem = label.parse::<Theorem>().map_err(|e| p.error(e.to_string()))?;
            QueryKind::Sweep { theorem }
        }
        other => return Err(p.error_at(at, format!("unknown query `{other}`"))),
    };
    let mut bounds = Bounds::default();
    let mut expect = None;
    while !p.at_end() {
        let key_at = p.mark();
        let key = p.ident()?;
        if key == "expect" {
            expect = Some(parse_expectation(p, &kind)?);
            p.finish()?;
            break;
        }
        p.expect("=")?;
        if !bounds.set(key, p)? {
            return Err(p.error_at(key_at, format!("unknown option `{key}`")));
        }
    }
    let text = match text.find(" expect ") {
        Some(i) => &text[..i],
        None => text,
    };
    Ok(Query {
        line,
        text: text.trim().to_string(),
        kind,
        bounds,
        expect,
    })
}

fn nonempty(p: &mut Parser, read: impl FnOnce(&mut Parser) -> Result<Region>) -> Result<Region> {
    p.skip_ws();
    let at = p.error("empty open set");
    let r = read(p)?;
    if r.is_empty() {
        return Err(at);
    }
    Ok(r)
}

fn parse_expectation(p: &mut Parser, kind: &QueryKind) -> Result<(Expectation, String)> {
    p.skip_ws();
    let bad = p.error(format!("expectation does not apply to `{}`", kind.name()));
    let word = p.ident()?;
    let is_hitting = matches!(kind, QueryKind::Hitting { .. });
    let is_sweep = matches!(kind, QueryKind::Sweep { .. });
    let exp = match word {
        "proven" if !is_hitting && !is_sweep => Expectation::Proven,
        "refuted" if !is_hitting && !is_sweep => Expectation::Refuted,
        "unknown" if !is_hitting && !is_sweep => Expectation::Unknown,
        "pass" if !is_hitting && !is_sweep => Expectation::Pass,
        "ep" if is_hitting => Expectation::Equals(epset_literal(p, "ep")?),
        "excludes" if is_hitting => {
            let w = p.ident()?;
            if w != "ep" {
                return Err(p.error("expected an ep{..} literal"));
            }
            Expectation::Excludes(epset_literal(p, "ep")?)
        }
        "empty" if is_hitting => Expectation::Empty,
        "nonempty" if is_hitting => Expectation::Nonempty,
        "cofinite" if is_hitting => Expectation::Cofinite,
        "clean" if is_sweep => Expectation::Clean,
        "counterexample" if is_sweep => Expectation::Counterexample,
        _ => return Err(bad),
    };
    let text = match &exp {
        Expectation::Equals(s) => s.to_string(),
        Expectation::Excludes(s) => format!("excludes {s}"),
        _ => word.to_string(),
    };
    Ok((exp, text))
}

/// Reads the `{...}` body of an `ep{..}` literal whose keyword was consumed.
fn epset_literal(p: &mut Parser, keyword: &str) -> Result<EPSet> {
    p.skip_ws();
    let start = p.error("bad ep literal");
    p.expect("{")?;
    let mut body = String::new();
    let mut depth = 1;
    while depth > 0 {
        let c = p.bump().ok_or_else(|| p.error("unterminated ep literal"))?;
        match c {
            '{' => depth += 1,
            '}' => depth -= 1,
            _ => {}
        }
        if depth > 0 {
            body.push(c);
        }
    }
    format!("{keyword}{{{body}}}")
        .parse::<EPSet>()
        .map_err(|e| match start {
            Error::Parse(mut pe) => {
                pe.message = e.to_string();
                Error::Parse(pe)
            }
            other => other,
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_definitions_and_queries() {
        let src = "\
# growing shift
system s = shift{s=2} exps=(1,-4,4)
system c = circle{p=2} pairgrowing
open A = arc(0,1/4)
open B = arc(1/2,3/4)
set res=1
query strong-multi s p_max=2 a_max=3 expect unknown
query hitting c A B expect ep{t=1; trans=; q=2; R={1}}
query multi c res=4 expect refuted
query sweep T4.1 N=3 samples=0
";
        let cfg = ExperimentConfig::parse(src).unwrap();
        assert_eq!(cfg.systems.len(), 2);
        assert_eq!(cfg.queries.len(), 4);
        assert_eq!(cfg.settings.resolution, Some(1));
        assert_eq!(cfg.queries[0].bounds.p_max, Some(2));
        assert_eq!(cfg.queries[0].text, "strong-multi s p_max=2 a_max=3");
        assert_eq!(cfg.queries[2].bounds.resolution, Some(4));
        assert!(matches!(cfg.queries[1].expect, Some((Expectation::Equals(_), _))));
        assert!(cfg.queries[3].expect.is_none());
    }

    #[test]
    fn errors_point_at_the_offending_token() {
        let err = |src: &str| match ExperimentConfig::parse(src) {
            Err(Error::Parse(e)) => (e.line, e.column),
            other => panic!("{other:?}"),
        };
        assert_eq!(err("system s = shift{s=2} exps=(1)\nquery multi t"), (2, 13));
        assert_eq!(err("frobnicate"), (1, 1));
        assert_eq!(
            err("system s = shift{s=2} exps=(1)\nquery hitting s fin{0} fin{0}"),
            (2, 17)
        );
        assert_eq!(
            err("system s = finite{n=2} tables=[(1,0)]\nquery multi s expect ep{q=1}"),
            (2, 22)
        );
        assert_eq!(
            err("open A = arc(0,1/4)\nsystem s = finite{n=2} tables=[(1,0)]\nquery hitting s A A"),
            (1, 10)
        );
        assert_eq!(
            err("system s = finite{n=2} tables=[(1,0)]\nsystem s = finite{n=2} tables=[(1,0)]"),
            (2, 9)
        );
    }
}
