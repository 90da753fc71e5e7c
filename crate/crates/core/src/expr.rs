//! Group expressions: `cyclic:12`, `dihedral:8`, `symmetric:6`,
//! `product(cyclic:2, dihedral:3)`, `table:@path.json`.

use std::fmt;
use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::group::{cyclic, dihedral, direct_product_all, symmetric, FiniteGroup};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupExpr {
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Product(Vec<GroupExpr>),
    Table(PathBuf),
}

impl GroupExpr {
    pub fn parse(src: &str) -> Result<Self> {
        let mut cur = Cursor::new(src);
        let e = cur.expr()?;
        cur.skip_ws();
        if !cur.at_end() {
            return Err(cur.error("unexpected trailing input"));
        }
        Ok(e)
    }

    pub fn build(&self) -> Result<FiniteGroup> {
        match self {
            GroupExpr::Cyclic(n) => cyclic(*n),
            GroupExpr::Dihedral(n) => dihedral(*n),
            GroupExpr::Symmetric(n) => symmetric(*n),
            GroupExpr::Product(fs) => {
                let gs = fs.iter().map(GroupExpr::build).collect::<Result<Vec<_>>>()?;
                direct_product_all(&gs.iter().collect::<Vec<_>>())
            }
            GroupExpr::Table(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                FiniteGroup::from_json(&text)
            }
        }
    }
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupExpr::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupExpr::Dihedral(n) => write!(f, "dihedral:{n}"),
            GroupExpr::Symmetric(n) => write!(f, "symmetric:{n}"),
            GroupExpr::Product(fs) => {
                f.write_str("product(")?;
                for (i, e) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{e}")?;
                }
                f.write_str(")")
            }
            GroupExpr::Table(p) => write!(f, "table:@{}", p.display()),
        }
    }
}

/// Parse a group expression, returning a parse error with a byte position.
pub fn parse_group(src: &str) -> Result<GroupExpr> {
    GroupExpr::parse(src)
}

/// A byte cursor over the input shared with the groupoid grammar.
pub(crate) struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    pub(crate) fn pos(&self) -> usize {
        self.pos
    }

    pub(crate) fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    pub(crate) fn error(&self, msg: impl Into<String>) -> Error {
        Error::Parse { pos: self.pos, msg: msg.into() }
    }

    pub(crate) fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    pub(crate) fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error(format!("expected {tok:?}")))
        }
    }

    pub(crate) fn ident(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let len = self.rest().find(|c: char| !(c.is_ascii_alphanumeric() || c == '_')).unwrap_or(self.rest().len());
        if len == 0 || !self.rest().starts_with(|c: char| c.is_ascii_alphabetic()) {
            return Err(self.error("expected a name"));
        }
        let s = &self.rest()[..len];
        self.pos += len;
        Ok(s)
    }

    pub(crate) fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let len = self.rest().find(|c: char| !c.is_ascii_digit()).unwrap_or(self.rest().len());
        if len == 0 {
            return Err(self.error("expected a number"));
        }
        let n = self.rest()[..len].parse().map_err(|_| self.error("number out of range"))?;
        self.pos += len;
        Ok(n)
    }

    pub(crate) fn expr(&mut self) -> Result<GroupExpr> {
        let mut v = self.term(false)?;
        Ok(v.remove(0))
    }

    /// One expression, or with `ranges` a family over `a..b`.
    pub(crate) fn term(&mut self, ranges: bool) -> Result<Vec<GroupExpr>> {
        self.skip_ws();
        let start = self.pos;
        let name = self.ident()?;
        match name {
            "product" => {
                self.expect("(")?;
                let mut fs = vec![self.expr()?];
                while self.eat(",") {
                    fs.push(self.expr()?);
                }
                self.expect(")")?;
                Ok(vec![GroupExpr::Product(fs)])
            }
            "table" => {
                self.expect(":")?;
                self.expect("@")?;
                let rest = self.rest();
                let len = rest.find(|c: char| c.is_whitespace() || c == ',' || c == ')').unwrap_or(rest.len());
                if len == 0 {
                    return Err(self.error("expected a file path"));
                }
                self.pos += len;
                Ok(vec![GroupExpr::Table(PathBuf::from(&rest[..len]))])
            }
            "cyclic" | "dihedral" | "symmetric" => {
                self.expect(":")?;
                let a = self.number()?;
                let b = if ranges && self.eat("..") { self.number()? } else { a };
                if b < a {
                    return Err(self.error(format!("empty range {a}..{b}")));
                }
                Ok((a..=b)
                    .map(|n| match name {
                        "cyclic" => GroupExpr::Cyclic(n),
                        "dihedral" => GroupExpr::Dihedral(n),
                        _ => GroupExpr::Symmetric(n),
                    })
                    .collect())
            }
            other => Err(Error::Parse { pos: start, msg: format!("unknown family {other:?}") }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let e = GroupExpr::parse(" product(cyclic:2 , dihedral:3)").unwrap();
        assert_eq!(e, GroupExpr::Product(vec![GroupExpr::Cyclic(2), GroupExpr::Dihedral(3)]));
        assert_eq!(e.to_string(), "product(cyclic:2, dihedral:3)");
        assert_eq!(e.build().unwrap().order(), 12);
        assert_eq!(GroupExpr::parse("table:@g.json").unwrap(), GroupExpr::Table("g.json".into()));
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(GroupExpr::parse("dihedral:x"), Err(Error::Parse { pos: 9, msg: "expected a number".into() }));
        assert!(matches!(GroupExpr::parse("foo:3"), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(GroupExpr::parse("cyclic:3 junk"), Err(Error::Parse { pos: 9, .. })));
        assert!(matches!(GroupExpr::parse("product(cyclic:2"), Err(Error::Parse { pos: 16, .. })));
        assert!(GroupExpr::parse("symmetric:1..3").is_err());
    }
}
