use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Identifier of an evaluated model, e.g. `gpt-4-0613`.
///
/// Ordering is byte-wise lexicographic on the raw token, which is what the
/// alphabetical tie-break rules rely on.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModelId(String);

impl ModelId {
    pub fn new(id: impl Into<String>) -> Result<Self> {
        let id = id.into();
        if id.is_empty() {
            return Err(Error::EmptyIdentifier);
        }
        Ok(ModelId(id))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ModelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for ModelId {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

/// A finite set of models, stored in ascending identifier order.
///
/// Rankings, relations and certificates refer to models by their index in
/// this set, so index order and identifier order coincide. Cloning is cheap.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModelSet(Arc<[ModelId]>);

impl ModelSet {
    pub fn new<I, S>(ids: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let ids = ids
            .into_iter()
            .map(ModelId::new)
            .collect::<Result<Vec<_>>>()?;
        Self::from_ids(ids)
    }

    pub fn from_ids(mut ids: Vec<ModelId>) -> Result<Self> {
        ids.sort();
        if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateModel(w[0].to_string()));
        }
        Ok(ModelSet(ids.into()))
    }

    /// `k` models named `m0`, `m1`, ... zero-padded so that index order
    /// matches name order.
    pub fn synthetic(k: usize) -> Self {
        let width = k.saturating_sub(1).to_string().len();
        let ids = (0..k)
            .map(|i| ModelId(format!("m{i:0width$}")))
            .collect::<Vec<_>>();
        ModelSet(ids.into())
    }

    pub fn empty() -> Self {
        ModelSet(Vec::new().into())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, index: usize) -> &ModelId {
        &self.0[index]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.0.binary_search_by(|m| m.as_str().cmp(id)).ok()
    }

    pub fn contains(&self, id: &str) -> bool {
        self.index_of(id).is_some()
    }

    pub fn ids(&self) -> &[ModelId] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ModelId> {
        self.0.iter()
    }

    /// This set extended by one model.
    pub fn with(&self, id: ModelId) -> Result<ModelSet> {
        if self.contains(id.as_str()) {
            return Err(Error::AddedModelInBase(id.to_string()));
        }
        let mut ids = self.0.to_vec();
        ids.push(id);
        ModelSet::from_ids(ids)
    }

    /// The sub-set made of the given indices.
    pub fn subset(&self, indices: &[usize]) -> ModelSet {
        let mut ids: Vec<ModelId> = indices.iter().map(|&i| self.0[i].clone()).collect();
        ids.sort();
        ids.dedup();
        ModelSet(ids.into())
    }
}

impl<'a> IntoIterator for &'a ModelSet {
    type Item = &'a ModelId;
    type IntoIter = std::slice::Iter<'a, ModelId>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}
