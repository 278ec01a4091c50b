//! Textual forms of systems, opens and vectors. Every `Display` in the
//! crate for these types parses back through this module.
//!
//! ```text
//! system  := base | NAME | iterate(system, INT) | tower(system, INT)
//!          | vprod(system; INT,..) | product(system, system, ..)
//! base    := shift{s=INT} exps=(INT,..) | circle{p=INT} exps=(INT,..)
//!          | shift{s=INT} pairgrowing | circle{p=INT} pairgrowing
//!          | finite{n=INT} tables=[(INT,..),..]
//! region  := NAME | cyl{INT:WORD|..} | arc(RAT,RAT)+.. | circle | arcs{}
//!          | fin{INT,..} | box(region, ..)
//! ```
//!
//! Regions carry no space of their own: cylinders take the alphabet size
//! and finite subsets the point count from the space they are read in.

use crate::error::{Error, ParseError, Result};
use crate::spaces::{Arc, ArcSet, Cylinder, CylinderSet, FiniteSubset, OpenSet, Rational, Region, Space};
use crate::systems::{tower, Schedule, SystemDescriptor, Vector};

/// Cursor over one logical line; errors report `line` and the 1-based
/// column `offset + position + 1`.
pub struct Parser<'s> {
    src: &'s str,
    pos: usize,
    line: usize,
    offset: usize,
}

impl<'s> Parser<'s> {
    pub fn new(src: &'s str, line: usize, offset: usize) -> Self {
        Parser {
            src,
            pos: 0,
            line,
            offset,
        }
    }

    /// Skips whitespace and returns the position of the next token.
    pub fn mark(&mut self) -> usize {
        self.skip_ws();
        self.pos
    }

    pub fn error(&self, message: impl Into<String>) -> Error {
        self.error_at(self.pos, message)
    }

    pub fn error_at(&self, pos: usize, message: impl Into<String>) -> Error {
        Error::Parse(ParseError {
            line: self.line,
            column: self.offset + self.src[..pos].chars().count() + 1,
            message: message.into(),
        })
    }

    fn rest(&self) -> &'s str {
        &self.src[self.pos..]
    }

    pub fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    pub fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.src.len()
    }

    /// Consumes one character, whitespace included.
    pub fn bump(&mut self) -> Option<char> {
        let c = self.rest().chars().next()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    /// Re-anchors a non-syntax error at `pos`; syntax errors keep their
    /// own position.
    fn relocate(&self, pos: usize, e: Error) -> Error {
        match e {
            Error::Parse(_) => e,
            other => self.error_at(pos, other.to_string()),
        }
    }

    pub fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    /// Consumes `token` (after whitespace) if present.
    pub fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{token}`")))
        }
    }

    pub fn finish(&mut self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error(format!("unexpected `{}`", self.rest())))
        }
    }

    /// Identifier: letters, digits, `_`, `-`, `.`, starting with a letter.
    pub fn ident(&mut self) -> Result<&'s str> {
        self.skip_ws();
        let rest = self.rest();
        let len = rest
            .char_indices()
            .find(|&(i, c)| !(c.is_ascii_alphanumeric() || c == '_' || (i > 0 && (c == '-' || c == '.'))))
            .map_or(rest.len(), |(i, _)| i);
        if len == 0 || !rest.starts_with(|c: char| c.is_ascii_alphabetic()) {
            return Err(self.error("expected a name"));
        }
        self.pos += len;
        Ok(&rest[..len])
    }

    /// Peeks at the next identifier without consuming it.
    pub fn peek_ident(&mut self) -> Option<&'s str> {
        let save = self.pos;
        let out = self.ident().ok();
        self.pos = save;
        out
    }

    pub fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let rest = self.rest();
        let sign = usize::from(rest.starts_with('-') || rest.starts_with('+'));
        let digits = rest[sign..].chars().take_while(char::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.error("expected an integer"));
        }
        self.pos += sign + digits;
        self.src[start..self.pos]
            .parse()
            .map_err(|_| self.error_at(start, "integer out of range"))
    }

    pub fn uint(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        let v = self.int()?;
        u64::try_from(v).map_err(|_| self.error_at(start, "expected a non-negative integer"))
    }

    pub fn positive(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        match self.uint()? {
            0 => Err(self.error_at(start, "expected a positive integer")),
            v => Ok(v),
        }
    }

    pub fn rational(&mut self) -> Result<Rational> {
        let num = self.int()?;
        let den = if self.eat("/") { self.int()? } else { 1 };
        if den == 0 {
            return Err(self.error("zero denominator"));
        }
        Ok(Rational::new(num.into(), den.into()))
    }

    /// `INT, INT, ...` up to (not including) `close`.
    pub fn int_list(&mut self, close: &str) -> Result<Vec<i64>> {
        let mut out = Vec::new();
        self.skip_ws();
        if self.rest().starts_with(close) {
            return Ok(out);
        }
        loop {
            out.push(self.int()?);
            if !self.eat(",") {
                return Ok(out);
            }
        }
    }

    pub fn vector(&mut self) -> Result<Vector> {
        let start = self.pos;
        self.expect("(")?;
        let comps = self.int_list(")")?;
        self.expect(")")?;
        let comps = comps
            .into_iter()
            .map(|c| u64::try_from(c).map_err(|_| self.error_at(start, "vector components must be positive")))
            .collect::<Result<_>>()?;
        Vector::new(comps).map_err(|e| self.error_at(start, e.to_string()))
    }

    fn space(&mut self) -> Result<Space> {
        let start = self.pos;
        let kind = self.ident()?;
        self.expect("{")?;
        let key = self.ident()?;
        self.expect("=")?;
        let v = self.positive()?;
        self.expect("}")?;
        let space = match (kind, key) {
            ("shift", "s") => Space::Shift {
                symbols: u8::try_from(v).map_err(|_| self.error_at(start, "alphabet too large"))?,
            },
            ("circle", "p") => Space::Circle {
                p: u32::try_from(v).map_err(|_| self.error_at(start, "multiplier too large"))?,
            },
            ("finite", "n") => Space::Finite { n: v as usize },
            _ => return Err(self.error_at(start, format!("unknown space `{kind}{{{key}=..}}`"))),
        };
        space.validate().map_err(|e| self.error_at(start, e.to_string()))?;
        Ok(space)
    }

    fn schedule(&mut self) -> Result<Schedule> {
        let start = self.pos;
        match self.ident()? {
            "pairgrowing" => Ok(Schedule::PairGrowing),
            "exps" => {
                self.expect("=")?;
                self.expect("(")?;
                let e = self.int_list(")")?;
                self.expect(")")?;
                Ok(Schedule::PeriodicExponents(e))
            }
            "tables" => {
                self.expect("=")?;
                self.expect("[")?;
                let mut tables = Vec::new();
                loop {
                    let at = self.pos;
                    self.expect("(")?;
                    let t = self.int_list(")")?;
                    self.expect(")")?;
                    tables.push(
                        t.into_iter()
                            .map(|x| usize::try_from(x).map_err(|_| self.error_at(at, "negative table entry")))
                            .collect::<Result<Vec<_>>>()?,
                    );
                    if !self.eat(",") {
                        break;
                    }
                }
                self.expect("]")?;
                Ok(Schedule::PeriodicTables(tables))
            }
            other => Err(self.error_at(start, format!("unknown schedule `{other}`"))),
        }
    }

    /// A system expression; bare names go through `lookup`.
    pub fn system(&mut self, lookup: &dyn Fn(&str) -> Option<SystemDescriptor>) -> Result<SystemDescriptor> {
        self.skip_ws();
        let start = self.pos;
        let name = self.peek_ident().ok_or_else(|| self.error("expected a system"))?;
        let wrap = |p: &Self, r: Result<SystemDescriptor>| r.map_err(|e| p.relocate(start, e));
        match name {
            "shift" | "circle" | "finite" if self.src[self.pos..].trim_start()[name.len()..].starts_with('{') => {
                let space = self.space()?;
                let schedule = self.schedule()?;
                wrap(self, SystemDescriptor::base(space, schedule))
            }
            "iterate" | "tower" if self.src[self.pos..].trim_start()[name.len()..].starts_with('(') => {
                self.ident()?;
                self.expect("(")?;
                let inner = self.system(lookup)?;
                self.expect(",")?;
                let n = self.positive()?;
                self.expect(")")?;
                let built = if name == "iterate" {
                    SystemDescriptor::iterate(inner, n)
                } else {
                    tower(inner, n)
                };
                wrap(self, built)
            }
            "vprod" if self.src[self.pos..].trim_start()[name.len()..].starts_with('(') => {
                self.ident()?;
                self.expect("(")?;
                let inner = self.system(lookup)?;
                self.expect(";")?;
                let at = self.pos;
                let comps = self.int_list(")")?;
                self.expect(")")?;
                let comps = comps
                    .into_iter()
                    .map(|c| u64::try_from(c).map_err(|_| self.error_at(at, "vector components must be positive")))
                    .collect::<Result<_>>()?;
                let a = Vector::new(comps).map_err(|e| self.error_at(at, e.to_string()))?;
                Ok(SystemDescriptor::vector_product(inner, a))
            }
            "product" if self.src[self.pos..].trim_start()[name.len()..].starts_with('(') => {
                self.ident()?;
                self.expect("(")?;
                let mut factors = vec![self.system(lookup)?];
                while self.eat(",") {
                    factors.push(self.system(lookup)?);
                }
                self.expect(")")?;
                wrap(self, SystemDescriptor::product(factors))
            }
            _ => {
                self.ident()?;
                lookup(name).ok_or_else(|| self.error_at(start, format!("unknown system `{name}`")))
            }
        }
    }

    /// A region of `space`; bare names go through `lookup`, which receives
    /// the space the name is read in.
    pub fn region(&mut self, space: &Space, lookup: &dyn Fn(&str, &Space) -> Result<Region>) -> Result<Region> {
        self.skip_ws();
        let start = self.pos;
        let name = self.peek_ident().ok_or_else(|| self.error("expected an open set"))?;
        let follows = |p: &Self, c: char| p.src[p.pos..].trim_start()[name.len()..].starts_with(c);
        let located = |p: &Self, r: Result<Region>| r.map_err(|e| p.relocate(start, e));
        match (name, space) {
            ("box", Space::Product(factors)) if follows(self, '(') => {
                self.ident()?;
                self.expect("(")?;
                let mut parts = Vec::new();
                for (i, f) in factors.iter().enumerate() {
                    if i > 0 {
                        self.expect(",")?;
                    }
                    parts.push(self.region(f, lookup)?);
                }
                self.expect(")")?;
                Ok(Region::Box(parts))
            }
            ("cyl", Space::Shift { symbols }) if follows(self, '{') => {
                self.ident()?;
                self.expect("{")?;
                let mut comps = Vec::new();
                loop {
                    let lo = self.int()?;
                    self.expect(":")?;
                    self.skip_ws();
                    let at = self.pos;
                    let digits: String = self.rest().chars().take_while(char::is_ascii_digit).collect();
                    self.pos += digits.len();
                    let word: Vec<u8> = digits.bytes().map(|b| b - b'0').collect();
                    comps.push(Cylinder::new(lo, word, *symbols).map_err(|e| self.error_at(at, e.to_string()))?);
                    if !self.eat("|") {
                        break;
                    }
                }
                self.expect("}")?;
                Ok(Region::Set(OpenSet::Cylinders(CylinderSet::new(*symbols, comps))))
            }
            ("circle", Space::Circle { .. }) => {
                self.ident()?;
                Ok(Region::Set(OpenSet::Arcs(ArcSet::full())))
            }
            ("arcs", Space::Circle { .. }) if follows(self, '{') => {
                self.ident()?;
                self.expect("{")?;
                self.expect("}")?;
                Ok(Region::Set(OpenSet::Arcs(ArcSet::empty())))
            }
            ("arc", Space::Circle { .. }) if follows(self, '(') => {
                let mut arcs = Vec::new();
                loop {
                    let at = self.pos;
                    self.expect("arc")?;
                    self.expect("(")?;
                    let lo = self.rational()?;
                    self.expect(",")?;
                    let hi = self.rational()?;
                    self.expect(")")?;
                    arcs.push(Arc::new(lo, hi).map_err(|e| self.error_at(at, e.to_string()))?);
                    if !self.eat("+") {
                        break;
                    }
                }
                Ok(Region::Set(OpenSet::Arcs(ArcSet::new(arcs))))
            }
            ("fin", Space::Finite { n }) if follows(self, '{') => {
                self.ident()?;
                self.expect("{")?;
                let at = self.pos;
                let pts = self.int_list("}")?;
                self.expect("}")?;
                let pts = pts
                    .into_iter()
                    .map(|x| usize::try_from(x).map_err(|_| self.error_at(at, "negative point")))
                    .collect::<Result<Vec<_>>>()?;
                located(
                    self,
                    FiniteSubset::from_points(*n, &pts).map(|s| Region::Set(OpenSet::Finite(s))),
                )
            }
            ("box" | "cyl" | "arc" | "arcs" | "fin", _) if follows(self, '(') || follows(self, '{') => {
                Err(self.error(format!("`{name}` is not an open set of {space}")))
            }
            _ => {
                self.ident()?;
                located(self, lookup(name, space))
            }
        }
    }
}

fn no_names(name: &str) -> Option<SystemDescriptor> {
    let _ = name;
    None
}

fn no_regions(name: &str, _: &Space) -> Result<Region> {
    Err(Error::InvalidArgument(format!("unknown open set `{name}`")))
}

/// Parses a self-contained system expression.
pub fn parse_system(src: &str) -> Result<SystemDescriptor> {
    let mut p = Parser::new(src, 1, 0);
    let sys = p.system(&no_names)?;
    p.finish()?;
    Ok(sys)
}

/// Parses a region of `space` without named references.
pub fn parse_region(src: &str, space: &Space) -> Result<Region> {
    let mut p = Parser::new(src, 1, 0);
    let r = p.region(space, &no_regions)?;
    p.finish()?;
    Ok(r)
}

pub fn parse_vector(src: &str) -> Result<Vector> {
    let mut p = Parser::new(src, 1, 0);
    let v = p.vector()?;
    p.finish()?;
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::minimal_basis;
    use crate::systems::fixtures;

    #[test]
    fn systems_round_trip() {
        let base = fixtures::finite_tables(3, vec![vec![1, 2, 0], vec![0, 0, 1]]);
        let systems = [
            fixtures::swing_shift(4),
            fixtures::pair_growing_circle(2),
            base.clone(),
            SystemDescriptor::iterate(base.clone(), 3).unwrap(),
            SystemDescriptor::vector_product(fixtures::swing_shift(4), Vector::new(vec![1, 2, 3]).unwrap()),
            tower(base.clone(), 4).unwrap(),
            SystemDescriptor::product(vec![base, fixtures::constant_circle(3)]).unwrap(),
        ];
        for sys in systems {
            assert_eq!(parse_system(&sys.to_string()).unwrap(), sys, "{sys}");
        }
    }

    #[test]
    fn regions_round_trip() {
        let spaces = [
            Space::Shift { symbols: 2 },
            Space::Shift { symbols: 3 },
            Space::Circle { p: 2 },
            Space::Finite { n: 3 },
            Space::Product(vec![Space::Finite { n: 2 }, Space::Circle { p: 3 }]),
        ];
        for space in &spaces {
            for r in minimal_basis(space, 2).unwrap() {
                assert_eq!(parse_region(&r.to_string(), space).unwrap(), r, "{r}");
            }
        }
        let wrap = parse_region("arc(3/4,1/4)+arc(1/3,1/2)", &Space::Circle { p: 2 }).unwrap();
        assert_eq!(parse_region(&wrap.to_string(), &Space::Circle { p: 2 }).unwrap(), wrap);
        let cyl = parse_region("cyl{-1:01|2:1}", &Space::Shift { symbols: 2 }).unwrap();
        assert_eq!(cyl.to_string(), "cyl{-1:01|2:1}");
    }

    #[test]
    fn errors_carry_positions() {
        let Err(Error::Parse(e)) = parse_system("iterate(shift{s=2} exps=(1), 0)") else {
            panic!()
        };
        assert_eq!((e.line, e.column), (1, 30));
        let Err(Error::Parse(e)) = parse_system("shift{s=2} exps=(1) extra") else {
            panic!()
        };
        assert_eq!(e.column, 21);
        let Err(Error::Parse(e)) = parse_region("fin{0,5}", &Space::Finite { n: 3 }) else {
            panic!()
        };
        assert_eq!(e.column, 1);
        assert!(parse_region("cyl{0:2}", &Space::Shift { symbols: 2 }).is_err());
        assert!(parse_region("fin{0}", &Space::Circle { p: 2 }).is_err());
        assert!(parse_system("finite{n=2} tables=[(0,2)]").is_err());
        assert!(parse_system("nosuch").is_err());
    }

    #[test]
    fn vectors() {
        assert_eq!(parse_vector("(1, 2,3)").unwrap().components(), &[1, 2, 3]);
        assert!(parse_vector("(1,0)").is_err());
        assert!(parse_vector("()").is_err());
    }
}
