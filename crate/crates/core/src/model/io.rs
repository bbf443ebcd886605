//! JSON model files.
//!
//! ```json
//! {"states": ["a","b","c","d"],
//!  "partition": [["a","c"],["b","d"]],
//!  "valuation": {"r": ["a","c"], "p": ["a","b"]}}
//! ```
//!
//! `"expertise"` (an explicit family of state sets) may replace
//! `"partition"`; the family is checked against the closure laws and converted
//! to its blocks. Exactly one of the two keys must be present.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{
    check_states, name_partition_error, partition_from_expertise_set, set_from_names,
    ExpertiseModel, ModelError, Partition, SetFamily,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub states: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expertise: Option<Vec<Vec<String>>>,
    #[serde(default)]
    pub valuation: BTreeMap<String, Vec<String>>,
}

impl ExpertiseModel {
    pub fn from_file(file: &ModelFile) -> Result<ExpertiseModel, ModelError> {
        check_states(&file.states)?;
        let n = file.states.len();
        let to_sets = |lists: &[Vec<String>]| {
            lists
                .iter()
                .map(|l| set_from_names(&file.states, l.iter().map(String::as_str)))
                .collect::<Result<Vec<_>, _>>()
        };
        let partition = match (&file.partition, &file.expertise) {
            (Some(blocks), None) => Partition::new(n, to_sets(blocks)?)
                .map_err(|e| name_partition_error(e, &file.states))?,
            (None, Some(family)) => {
                let family = SetFamily::new(to_sets(family)?);
                partition_from_expertise_set(&family, n)?
            }
            _ => return Err(ModelError::PartitionSource),
        };
        let valuation = file
            .valuation
            .iter()
            .map(|(atom, members)| {
                Ok((
                    atom.clone(),
                    set_from_names(&file.states, members.iter().map(String::as_str))?,
                ))
            })
            .collect::<Result<BTreeMap<_, _>, ModelError>>()?;
        ExpertiseModel::new(file.states.clone(), partition, valuation)
    }

    /// File form with the canonical partition.
    pub fn to_file(&self) -> ModelFile {
        let names = |set| self.set_names(set).into_iter().map(String::from).collect();
        ModelFile {
            states: self.states().to_vec(),
            partition: Some(self.partition().blocks().iter().map(names).collect()),
            expertise: None,
            valuation: self
                .valuation()
                .iter()
                .map(|(atom, set)| (atom.clone(), names(set)))
                .collect(),
        }
    }

    pub fn from_json_str(text: &str) -> Result<ExpertiseModel, ModelError> {
        let file: ModelFile = serde_json::from_str(text)?;
        ExpertiseModel::from_file(&file)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self.to_file()).expect("model file serializes")
    }
}
