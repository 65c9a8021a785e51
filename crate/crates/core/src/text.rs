//! Text and JSON file formats.

use serde::{Deserialize, Serialize};

use crate::codes::LinearCode;
use crate::design::{DesignInstance, Mode};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::group::{GlElem, GroupSpec};
use crate::matrix::Matrix;
use crate::subspace::Subspace;

/// Parses a field spec `"p^e"`; a bare prime power `"q"` is also accepted.
pub fn parse_field_spec(spec: &str) -> Result<Field> {
    let spec = spec.trim();
    let bad = || Error::Parse(format!("bad field spec {spec:?}"));
    match spec.split_once('^') {
        Some((p, e)) => {
            let p = p.trim().parse::<u64>().map_err(|_| bad())?;
            let e = e.trim().parse::<u32>().map_err(|_| bad())?;
            Field::new(p, e)
        }
        None => Field::with_order(spec.parse::<u64>().map_err(|_| bad())?),
    }
}

/// Group file: a header line `"p^e n"`, then one generator per block in the
/// matrix text format, blocks separated by blank lines.
pub fn parse_group(text: &str) -> Result<GroupSpec> {
    let mut blocks = text.split("\n\n").map(str::trim).filter(|b| !b.is_empty());
    let first = blocks
        .next()
        .ok_or_else(|| Error::Parse("empty group file".into()))?;
    let (header, rest) = first.split_once('\n').unwrap_or((first, ""));
    let parts: Vec<&str> = header.split_whitespace().collect();
    if parts.len() != 2 {
        return Err(Error::Parse(format!("bad group header {header:?}")));
    }
    let field = parse_field_spec(parts[0])?;
    let n = parts[1]
        .parse::<usize>()
        .map_err(|_| Error::Parse(format!("bad dimension {:?}", parts[1])))?;
    let mut gens = Vec::new();
    for block in std::iter::once(rest.trim())
        .filter(|b| !b.is_empty())
        .chain(blocks)
    {
        let m = Matrix::parse(block)?;
        if m.field() != &field {
            return Err(Error::FieldMismatch);
        }
        if m.rows() != n || m.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} generator in a group of degree {n}",
                m.rows(),
                m.cols()
            )));
        }
        gens.push(GlElem::new(m)?);
    }
    GroupSpec::new(&field, n, gens)
}

pub fn group_to_text(group: &GroupSpec) -> String {
    let mut s = format!("{} {}", group.field().spec(), group.n());
    for g in group.generators() {
        s.push_str("\n\n");
        s.push_str(&g.matrix().to_text());
    }
    s.push('\n');
    s
}

/// On-disk form of a design.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignFile {
    pub field: String,
    pub n: usize,
    pub t: usize,
    pub k: usize,
    pub lambda: u64,
    #[serde(default)]
    pub mode: Mode,
    /// Basis matrices in the matrix text format; each must be in RREF.
    pub blocks: Vec<String>,
}

impl DesignFile {
    pub fn from_design(d: &DesignInstance) -> DesignFile {
        DesignFile {
            field: d.field().spec(),
            n: d.n(),
            t: d.t(),
            k: d.k(),
            lambda: d.lambda(),
            mode: d.mode(),
            blocks: d.blocks().iter().map(Subspace::to_text).collect(),
        }
    }

    pub fn into_design(self) -> Result<DesignInstance> {
        let field = parse_field_spec(&self.field)?;
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                let m = Matrix::parse(b)?;
                if m.field() != &field {
                    return Err(Error::FieldMismatch);
                }
                Subspace::from_rref(m)
            })
            .collect::<Result<Vec<_>>>()?;
        DesignInstance::new(
            &field,
            self.n,
            self.t,
            self.k,
            blocks,
            self.lambda,
            self.mode,
        )
    }
}

pub fn parse_design(json: &str) -> Result<DesignInstance> {
    let file: DesignFile = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    file.into_design()
}

pub fn design_to_json(d: &DesignInstance) -> String {
    serde_json::to_string_pretty(&DesignFile::from_design(d)).expect("plain data serializes")
}

/// On-disk form of a linear code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeFile {
    pub field: String,
    pub n: usize,
    pub k: usize,
    /// Generator in the matrix text format; need not be reduced.
    pub generator: String,
}

impl CodeFile {
    pub fn from_code(c: &LinearCode) -> CodeFile {
        CodeFile {
            field: c.field().spec(),
            n: c.n(),
            k: c.k(),
            generator: c.generator().to_text(),
        }
    }

    pub fn into_code(self) -> Result<LinearCode> {
        let field = parse_field_spec(&self.field)?;
        let g = Matrix::parse(&self.generator)?;
        if g.field() != &field {
            return Err(Error::FieldMismatch);
        }
        if g.cols() != self.n {
            return Err(Error::AmbientMismatch(g.cols(), self.n));
        }
        let code = LinearCode::from_generator(&g);
        if code.k() != self.k {
            return Err(Error::BadDimension {
                n: self.n,
                k: self.k,
            });
        }
        Ok(code)
    }
}

pub fn parse_code(json: &str) -> Result<LinearCode> {
    let file: CodeFile = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    file.into_code()
}

pub fn code_to_json(c: &LinearCode) -> String {
    serde_json::to_string_pretty(&CodeFile::from_code(c)).expect("plain data serializes")
}
