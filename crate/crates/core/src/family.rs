//! Named group families, looked up at runtime.
//!
//! A family turns a parameter list into a group (`dihedral` + `[4]` is `D4`)
//! and knows which of its members belong in a corpus bounded by order.
//! Everything that names groups (`family:<name>:<params>` sources, corpus
//! family lists) goes through a [`FamilyRegistry`].

use std::path::PathBuf;

use crate::construct::{
    direct_product, factorial, make_abelian, make_alternating, make_cyclic, make_dicyclic, make_dihedral,
    make_symmetric,
};
use crate::corpus::load_group;
use crate::error::{invalid, Result};
use crate::group::GroupTable;

pub trait GroupFamily: Send + Sync {
    fn name(&self) -> &'static str;

    fn build(&self, params: &[usize]) -> Result<GroupTable>;

    /// Display name and order of `build(params)`, without building it.
    fn describe(&self, params: &[usize]) -> Result<(String, usize)>;

    /// Parameter lists of every member of order at most `max_order`, in corpus order.
    fn corpus_params(&self, max_order: usize) -> Vec<Vec<usize>>;

    /// Whether every member is abelian; used to choose direct-product factors.
    fn abelian(&self) -> bool {
        false
    }
}

fn one(family: &str, params: &[usize]) -> Result<usize> {
    match params {
        [m] => Ok(*m),
        _ => Err(invalid(format!("{family} takes exactly one parameter, got {}", params.len()))),
    }
}

pub struct Cyclic;

impl GroupFamily for Cyclic {
    fn name(&self) -> &'static str {
        "cyclic"
    }
    fn build(&self, params: &[usize]) -> Result<GroupTable> {
        make_cyclic(one(self.name(), params)?)
    }
    fn describe(&self, params: &[usize]) -> Result<(String, usize)> {
        let m = one(self.name(), params)?;
        Ok((format!("C{m}"), m))
    }
    fn corpus_params(&self, max_order: usize) -> Vec<Vec<usize>> {
        (1..=max_order).map(|m| vec![m]).collect()
    }
    fn abelian(&self) -> bool {
        true
    }
}

pub struct Dihedral;

impl GroupFamily for Dihedral {
    fn name(&self) -> &'static str {
        "dihedral"
    }
    fn build(&self, params: &[usize]) -> Result<GroupTable> {
        make_dihedral(one(self.name(), params)?)
    }
    fn describe(&self, params: &[usize]) -> Result<(String, usize)> {
        let m = one(self.name(), params)?;
        Ok((format!("D{m}"), 2 * m))
    }
    fn corpus_params(&self, max_order: usize) -> Vec<Vec<usize>> {
        (1..=max_order / 2).map(|m| vec![m]).collect()
    }
}

pub struct Dicyclic;

impl GroupFamily for Dicyclic {
    fn name(&self) -> &'static str {
        "dicyclic"
    }
    fn build(&self, params: &[usize]) -> Result<GroupTable> {
        make_dicyclic(one(self.name(), params)?)
    }
    fn describe(&self, params: &[usize]) -> Result<(String, usize)> {
        let m = one(self.name(), params)?;
        let name = if m == 2 { "Q8".to_string() } else { format!("Dic{m}") };
        Ok((name, 4 * m))
    }
    fn corpus_params(&self, max_order: usize) -> Vec<Vec<usize>> {
        (2..=max_order / 4).map(|m| vec![m]).collect()
    }
}

/// Abelian groups by invariant factors `d1 | d2 | … | dk`. The corpus lists
/// only `k >= 2`; the cyclic family already covers `k = 1`.
pub struct Abelian;

fn invariant_chains(max_order: usize) -> Vec<Vec<usize>> {
    fn extend(prefix: &mut Vec<usize>, product: usize, max_order: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() >= 2 {
            out.push(prefix.clone());
        }
        let last = *prefix.last().unwrap_or(&1);
        let mut d = last.max(2);
        while product * d <= max_order {
            if d % last == 0 {
                prefix.push(d);
                extend(prefix, product * d, max_order, out);
                prefix.pop();
            }
            d += 1;
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), 1, max_order, &mut out);
    out.sort_by_key(|v| (v.iter().product::<usize>(), v.clone()));
    out
}

impl GroupFamily for Abelian {
    fn name(&self) -> &'static str {
        "abelian"
    }
    fn build(&self, params: &[usize]) -> Result<GroupTable> {
        make_abelian(params)
    }
    fn describe(&self, params: &[usize]) -> Result<(String, usize)> {
        if params.iter().any(|&d| d < 2) {
            return Err(invalid("abelian invariants must be >= 2"));
        }
        let name = if params.is_empty() {
            "C1".to_string()
        } else {
            params.iter().map(|d| format!("C{d}")).collect::<Vec<_>>().join("x")
        };
        Ok((name, params.iter().product()))
    }
    fn corpus_params(&self, max_order: usize) -> Vec<Vec<usize>> {
        invariant_chains(max_order)
    }
    fn abelian(&self) -> bool {
        true
    }
}

pub struct Symmetric;

impl GroupFamily for Symmetric {
    fn name(&self) -> &'static str {
        "symmetric"
    }
    fn build(&self, params: &[usize]) -> Result<GroupTable> {
        make_symmetric(one(self.name(), params)?)
    }
    fn describe(&self, params: &[usize]) -> Result<(String, usize)> {
        let d = one(self.name(), params)?;
        Ok((format!("S{d}"), factorial(d)))
    }
    fn corpus_params(&self, max_order: usize) -> Vec<Vec<usize>> {
        (1..).take_while(|&d| factorial(d) <= max_order).map(|d| vec![d]).collect()
    }
}

pub struct Alternating;

fn alternating_order(d: usize) -> usize {
    (factorial(d) / 2).max(1)
}

impl GroupFamily for Alternating {
    fn name(&self) -> &'static str {
        "alternating"
    }
    fn build(&self, params: &[usize]) -> Result<GroupTable> {
        make_alternating(one(self.name(), params)?)
    }
    fn describe(&self, params: &[usize]) -> Result<(String, usize)> {
        let d = one(self.name(), params)?;
        Ok((format!("A{d}"), alternating_order(d)))
    }
    fn corpus_params(&self, max_order: usize) -> Vec<Vec<usize>> {
        (1..).take_while(|&d| alternating_order(d) <= max_order).map(|d| vec![d]).collect()
    }
}

pub struct FamilyRegistry {
    families: Vec<Box<dyn GroupFamily>>,
}

impl Default for FamilyRegistry {
    fn default() -> Self {
        Self::builtin()
    }
}

impl FamilyRegistry {
    pub fn empty() -> Self {
        FamilyRegistry { families: Vec::new() }
    }

    pub fn builtin() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(Cyclic));
        r.register(Box::new(Dihedral));
        r.register(Box::new(Dicyclic));
        r.register(Box::new(Abelian));
        r.register(Box::new(Symmetric));
        r.register(Box::new(Alternating));
        r
    }

    /// Later registrations replace earlier ones of the same name.
    pub fn register(&mut self, family: Box<dyn GroupFamily>) {
        self.families.retain(|f| f.name() != family.name());
        self.families.push(family);
    }

    pub fn get(&self, name: &str) -> Option<&dyn GroupFamily> {
        self.families.iter().find(|f| f.name() == name).map(|f| f.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.families.iter().map(|f| f.name()).collect()
    }

    pub fn lookup(&self, name: &str) -> Result<&dyn GroupFamily> {
        self.get(name).ok_or_else(|| invalid(format!("unknown family '{name}' (known: {})", self.names().join(", "))))
    }

    pub fn recipe(&self, family: &str, params: &[usize]) -> Result<GroupRecipe> {
        let (name, order) = self.lookup(family)?.describe(params)?;
        Ok(GroupRecipe { name, order, source: RecipeSource::Family { family: family.to_string(), params: params.to_vec() } })
    }

    pub fn build(&self, recipe: &GroupRecipe) -> Result<GroupTable> {
        let g = match &recipe.source {
            RecipeSource::Family { family, params } => self.lookup(family)?.build(params)?,
            RecipeSource::Product(a, b) => direct_product(&self.build(a)?, &self.build(b)?)?,
            RecipeSource::File(path) => load_group(path)?,
        };
        Ok(g.with_name(recipe.name.clone()))
    }

    /// Parses a `family:<name>:<p1,p2,…>` or `file:<path>` source.
    pub fn parse_source(&self, source: &str) -> Result<GroupRecipe> {
        if let Some(path) = source.strip_prefix("file:") {
            let g = load_group(path.as_ref())?;
            return Ok(GroupRecipe { name: g.name().to_string(), order: g.order(), source: RecipeSource::File(path.into()) });
        }
        let rest = source
            .strip_prefix("family:")
            .ok_or_else(|| invalid(format!("group source '{source}' must start with family: or file:")))?;
        let (family, params) = rest.split_once(':').unwrap_or((rest, ""));
        let params = params
            .split(',')
            .filter(|p| !p.trim().is_empty())
            .map(|p| p.trim().parse::<usize>().map_err(|_| invalid(format!("bad family parameter '{p}'"))))
            .collect::<Result<Vec<_>>>()?;
        self.recipe(family, &params)
    }
}

/// How to build one group, with its name and order known up front.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRecipe {
    pub name: String,
    pub order: usize,
    pub source: RecipeSource,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RecipeSource {
    Family { family: String, params: Vec<usize> },
    Product(Box<GroupRecipe>, Box<GroupRecipe>),
    File(PathBuf),
}

impl GroupRecipe {
    pub fn product(a: &GroupRecipe, b: &GroupRecipe) -> GroupRecipe {
        GroupRecipe {
            name: format!("{}x{}", a.name, b.name),
            order: a.order * b.order,
            source: RecipeSource::Product(Box::new(a.clone()), Box::new(b.clone())),
        }
    }
}
