use std::collections::HashMap;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// An ordered list of distinct labels. The list order is the total order
/// used for every canonical choice in the crate.
#[derive(Debug, Clone, Default)]
pub struct FinSet {
    labels: Vec<String>,
    index: OnceLock<HashMap<String, u32>>,
}

impl FinSet {
    pub fn new(labels: Vec<String>) -> Result<Self> {
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i as u32).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let set = FinSet {
            labels,
            index: OnceLock::new(),
        };
        let _ = set.index.set(index);
        Ok(set)
    }

    /// Builds a set whose labels the caller knows to be distinct.
    pub(crate) fn trusted(labels: Vec<String>) -> Self {
        FinSet {
            labels,
            index: OnceLock::new(),
        }
    }

    pub fn range(prefix: &str, n: usize) -> Self {
        Self::trusted((0..n).map(|i| format!("{prefix}{i}")).collect())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: u32) -> &str {
        &self.labels[i as usize]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<u32> {
        self.index
            .get_or_init(|| {
                self.labels
                    .iter()
                    .enumerate()
                    .map(|(i, l)| (l.clone(), i as u32))
                    .collect()
            })
            .get(label)
            .copied()
    }

    pub fn lookup(&self, label: &str, context: &str) -> Result<u32> {
        self.index_of(label).ok_or_else(|| Error::UnknownLabel {
            context: context.to_string(),
            label: label.to_string(),
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.labels.iter().map(String::as_str)
    }
}

impl PartialEq for FinSet {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels
    }
}

impl Eq for FinSet {}
