//! Map files.
//!
//! ```text
//! # comment
//! context=poly n=2 d=2
//! gen x1^2 -> x1^2
//! gen x1*x2 -> x1*x2 + x1^2
//! gen x2^2 -> x2^2 + 2*x1*x2 + x1^2
//! inverse
//! var x1 -> x1
//! var x2 -> x2 - x1
//! ```
//!
//! A block gives either the image of every Veronese generator (`gen`
//! lines) or the image of every free generator of a `d`-graded map (`var`
//! lines), which is then restricted. Poisson headers need `bound=`, and may
//! set `genbound=` below it.

use std::collections::HashMap;
use std::sync::Arc;

use veronese_core::lie::LieBasis;
use veronese_core::poly::{Monomial, Polynomial};
use veronese_core::veronese::{
    restrict_automorphism, restrict_automorphism_with_inverse, restrict_derivation, Context, GeneratorSet,
    VeroneseAutomorphism, VeroneseDerivation,
};

use crate::parse::{parse_expression_at, print_expression, ParseError};
use crate::CliError;

#[derive(Clone, Debug, Default)]
pub struct MapBlock {
    /// `(line, generator, image)`.
    pub gens: Vec<(usize, Monomial, Polynomial)>,
    /// Images of `x1..xn`, by index.
    pub vars: Vec<Option<(usize, Polynomial)>>,
}

impl MapBlock {
    fn is_empty(&self) -> bool {
        self.gens.is_empty() && self.vars.iter().all(Option::is_none)
    }
}

#[derive(Clone, Debug)]
pub struct MapFile {
    pub context: Context,
    pub d: u32,
    pub generators: Arc<GeneratorSet>,
    pub forward: MapBlock,
    pub inverse: Option<MapBlock>,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> CliError {
    CliError::Parse(ParseError {
        line,
        column,
        message: message.into(),
    })
}

fn parse_header(line_no: usize, line: &str) -> Result<(Context, u32), CliError> {
    let mut fields: HashMap<&str, (usize, &str)> = HashMap::new();
    let mut offset = 0;
    for token in line.split_whitespace() {
        let col = line[offset..].find(token).unwrap() + offset + 1;
        offset = col - 1 + token.len();
        let (key, value) = token
            .split_once('=')
            .ok_or_else(|| err(line_no, col, format!("expected key=value, found '{token}'")))?;
        if !["context", "n", "d", "bound", "genbound"].contains(&key) {
            return Err(err(line_no, col, format!("unknown header field '{key}'")));
        }
        fields.insert(key, (col, value));
    }
    let number = |key: &str| -> Result<Option<usize>, CliError> {
        match fields.get(key) {
            None => Ok(None),
            Some((col, v)) => v
                .parse()
                .map(Some)
                .map_err(|_| err(line_no, *col, format!("{key} must be a nonnegative integer"))),
        }
    };
    let n = number("n")?.ok_or_else(|| err(line_no, 1, "header needs n=<int>"))?;
    let d = number("d")?.ok_or_else(|| err(line_no, 1, "header needs d=<int>"))?;
    let bound = number("bound")?;
    let genbound = number("genbound")?;
    let kind = fields.get("context").map(|(_, v)| *v).unwrap_or("poly");
    let d = u32::try_from(d).map_err(|_| err(line_no, 1, "d is too large"))?;
    let ctx = match kind {
        "poly" | "polynomial" => Context::polynomial(n).map_err(CliError::Kernel)?,
        "poisson" => {
            let bound = bound.ok_or_else(|| err(line_no, 1, "Poisson header needs bound=<int>"))?;
            if bound > 12 {
                return Err(err(line_no, 1, "bound above 12 is not supported"));
            }
            let basis = LieBasis::shared(n, bound).map_err(|e| CliError::Usage(e.to_string()))?;
            Context::poisson_with_generator_bound(basis, genbound.unwrap_or(bound)).map_err(CliError::Kernel)?
        }
        other => {
            let col = fields["context"].0;
            return Err(err(line_no, col, format!("context must be poly or poisson, found '{other}'")));
        }
    };
    Ok((ctx, d))
}

/// Parses a map file.
pub fn parse_map_file(text: &str) -> Result<MapFile, CliError> {
    let mut header: Option<(Context, u32, Arc<GeneratorSet>)> = None;
    let mut forward = MapBlock::default();
    let mut inverse: Option<MapBlock> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let Some((ctx, _, gens)) = &header else {
            let (ctx, d) = parse_header(line_no, line)?;
            let gens = GeneratorSet::build(ctx.clone(), d).map_err(CliError::Kernel)?;
            header = Some((ctx, d, Arc::new(gens)));
            continue;
        };
        let indent = line.len() - line.trim_start().len();
        let body = line.trim_start();
        if body.trim_end() == "inverse" {
            if inverse.is_some() {
                return Err(err(line_no, indent + 1, "second inverse block"));
            }
            inverse = Some(MapBlock::default());
            continue;
        }
        let (keyword, rest) = body
            .split_once(char::is_whitespace)
            .ok_or_else(|| err(line_no, indent + 1, "expected 'gen', 'var' or 'inverse'"))?;
        let rest_offset = indent + keyword.len() + (body.len() - keyword.len() - rest.len());
        let arrow = rest
            .find("->")
            .ok_or_else(|| err(line_no, rest_offset + rest.len() + 1, "expected '->'"))?;
        let lhs = &rest[..arrow];
        let rhs = &rest[arrow + 2..];
        let lhs_offset = rest_offset;
        let rhs_offset = rest_offset + arrow + 2;
        let left = parse_expression_at(lhs, ctx, line_no, lhs_offset)?;
        let right = parse_expression_at(rhs, ctx, line_no, rhs_offset)?;
        let block = inverse.as_mut().unwrap_or(&mut forward);
        let lhs_col = lhs_offset + lhs.len() - lhs.trim_start().len() + 1;
        match keyword {
            "gen" => {
                let m = match left.leading_term() {
                    Some((m, c)) if left.num_terms() == 1 && num_traits::One::is_one(c) => m.clone(),
                    _ => return Err(err(line_no, lhs_col, "left side must be a generator monomial")),
                };
                if gens.index_of(&m).is_none() {
                    return Err(err(
                        line_no,
                        lhs_col,
                        format!("{} is not a Veronese generator", print_expression(&left, ctx)),
                    ));
                }
                if block.gens.iter().any(|(_, g, _)| g == &m) {
                    return Err(err(line_no, lhs_col, "generator given twice"));
                }
                block.gens.push((line_no, m, right));
            }
            "var" => {
                let i = match left.leading_term() {
                    Some((m, c))
                        if left.num_terms() == 1
                            && num_traits::One::is_one(c)
                            && m.total_degree() == 1
                            && (m.max_var().unwrap() as usize) < ctx.n() =>
                    {
                        m.max_var().unwrap() as usize
                    }
                    _ => return Err(err(line_no, lhs_col, "left side must be one of x1..xn")),
                };
                if block.vars.len() < ctx.n() {
                    block.vars.resize(ctx.n(), None);
                }
                if block.vars[i].is_some() {
                    return Err(err(line_no, lhs_col, "variable given twice"));
                }
                block.vars[i] = Some((line_no, right));
            }
            other => return Err(err(line_no, indent + 1, format!("unknown directive '{other}'"))),
        }
    }
    let (context, d, generators) = header.ok_or_else(|| err(1, 1, "missing header line"))?;
    Ok(MapFile {
        context,
        d,
        generators,
        forward,
        inverse,
    })
}

impl MapFile {
    fn block_images(&self, block: &MapBlock, label: &str) -> Result<Images, CliError> {
        if !block.gens.is_empty() && block.vars.iter().any(Option::is_some) {
            return Err(CliError::Usage(format!("{label} block mixes 'gen' and 'var' lines")));
        }
        if block.is_empty() {
            return Err(CliError::Usage(format!("{label} block is empty")));
        }
        if !block.gens.is_empty() {
            let gens = &self.generators;
            let mut images = vec![None; gens.len()];
            for (_, m, img) in &block.gens {
                images[gens.index_of(m).unwrap()] = Some(img.clone());
            }
            let missing: Vec<String> = (0..gens.len())
                .filter(|&i| images[i].is_none())
                .map(|i| gens.name(i))
                .collect();
            if !missing.is_empty() {
                return Err(CliError::Usage(format!(
                    "{label} block is missing generators: {}",
                    missing.join(", ")
                )));
            }
            Ok(Images::Generators(images.into_iter().map(Option::unwrap).collect()))
        } else {
            let n = self.context.n();
            let missing: Vec<String> = (0..n)
                .filter(|&i| block.vars.get(i).map_or(true, Option::is_none))
                .map(|i| format!("x{}", i + 1))
                .collect();
            if !missing.is_empty() {
                return Err(CliError::Usage(format!(
                    "{label} block is missing variables: {}",
                    missing.join(", ")
                )));
            }
            Ok(Images::Variables(
                block.vars.iter().map(|v| v.as_ref().unwrap().1.clone()).collect(),
            ))
        }
    }

    pub fn derivation(&self) -> Result<VeroneseDerivation, CliError> {
        Ok(match self.block_images(&self.forward, "map")? {
            Images::Generators(images) => VeroneseDerivation::new(self.generators.clone(), images)?,
            Images::Variables(images) => restrict_derivation(self.generators.clone(), &images)?,
        })
    }

    pub fn automorphism(&self) -> Result<VeroneseAutomorphism, CliError> {
        let forward = self.block_images(&self.forward, "map")?;
        let inverse = match &self.inverse {
            None => None,
            Some(b) => Some(self.block_images(b, "inverse")?),
        };
        let gens = self.generators.clone();
        Ok(match (forward, inverse) {
            (Images::Generators(f), None) => VeroneseAutomorphism::new(gens, f)?,
            (Images::Variables(f), None) => restrict_automorphism(gens, &f)?,
            (Images::Variables(f), Some(Images::Variables(b))) => restrict_automorphism_with_inverse(gens, &f, &b)?,
            (f, Some(b)) => {
                let f = self.restricted_automorphism_images(f)?;
                let b = self.restricted_automorphism_images(b)?;
                VeroneseAutomorphism::with_inverse(gens, f, b)?
            }
        })
    }

    fn restricted_automorphism_images(&self, images: Images) -> Result<Vec<Polynomial>, CliError> {
        Ok(match images {
            Images::Generators(g) => g,
            Images::Variables(v) => restrict_automorphism(self.generators.clone(), &v)?.images().to_vec(),
        })
    }

    /// Canonical text of the file.
    pub fn echo(&self) -> Vec<String> {
        let ctx = &self.context;
        let mut out = vec![match ctx.table_bound() {
            None => format!("context=poly n={} d={}", ctx.n(), self.d),
            Some(b) => {
                let mut h = format!("context=poisson n={} d={} bound={b}", ctx.n(), self.d);
                if let Some(g) = ctx.generator_bound().filter(|g| *g != b) {
                    h.push_str(&format!(" genbound={g}"));
                }
                h
            }
        }];
        let block_lines = |block: &MapBlock, out: &mut Vec<String>| {
            for (_, m, img) in &block.gens {
                let lhs = Polynomial::monomial(ctx.arity(), m.clone(), veronese_core::poly::scalar(1));
                out.push(format!("gen {} -> {}", print_expression(&lhs, ctx), print_expression(img, ctx)));
            }
            for (i, v) in block.vars.iter().enumerate() {
                if let Some((_, img)) = v {
                    out.push(format!("var x{} -> {}", i + 1, print_expression(img, ctx)));
                }
            }
        };
        block_lines(&self.forward, &mut out);
        if let Some(inv) = &self.inverse {
            out.push("inverse".to_string());
            block_lines(inv, &mut out);
        }
        out
    }
}

enum Images {
    Generators(Vec<Polynomial>),
    Variables(Vec<Polynomial>),
}
