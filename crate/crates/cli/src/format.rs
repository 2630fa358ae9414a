//! The JSON embedding file.
//!
//! ```json
//! { "components": [
//!     { "voxels": [[0,0,0], ...],
//!       "marking": { "m": [[1,0,0], ...], "l": [[1,1,0], ...] },
//!       "box_margin": 2 } ] }
//! ```

use serde::{Deserialize, Serialize};
use torq_core::cubical::{EdgeCycle, Point, Voxel, VoxelSolid};
use torq_core::embedding::{MarkedTorusEmbedding, SystemEmbedding, DEFAULT_BOX_MARGIN};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmbeddingFile {
    pub components: Vec<ComponentEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentEntry {
    pub voxels: Vec<Point>,
    pub marking: Marking,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub box_margin: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Marking {
    pub m: Vec<Point>,
    pub l: Vec<Point>,
}

impl EmbeddingFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::input("ParseError", e.to_string()))
    }

    /// One component per block, each point list on a single line.
    pub fn to_json(&self) -> String {
        let list = |pts: &[Point]| serde_json::to_string(pts).expect("plain data serializes");
        let blocks: Vec<String> = self
            .components
            .iter()
            .map(|c| {
                let margin = c.box_margin.map(|m| format!("\"box_margin\": {m},\n     ")).unwrap_or_default();
                format!(
                    "    {{{margin}\"voxels\": {},\n     \"marking\": {{\"m\": {},\n                 \"l\": {}}}}}",
                    list(&c.voxels),
                    list(&c.marking.m),
                    list(&c.marking.l)
                )
            })
            .collect();
        format!("{{\"components\": [\n{}\n]}}\n", blocks.join(",\n"))
    }

    pub fn from_system(system: &SystemEmbedding) -> Self {
        let components = system
            .components()
            .iter()
            .map(|e| ComponentEntry {
                voxels: e.solid().iter().map(|v| v.to_array()).collect(),
                marking: Marking {
                    m: e.m_cycle().vertices().to_vec(),
                    l: e.l_cycle().vertices().to_vec(),
                },
                box_margin: Some(e.box_margin()),
            })
            .collect();
        EmbeddingFile { components }
    }

    /// Solids only, without marking validation.
    pub fn solids(&self) -> Result<Vec<VoxelSolid>, CliError> {
        self.components
            .iter()
            .enumerate()
            .map(|(i, c)| {
                VoxelSolid::new(c.voxels.iter().map(|&p| Voxel::from(p)))
                    .map_err(|e| CliError::domain(e.name(), format!("components[{i}].voxels: {e}")))
            })
            .collect()
    }

    /// Validates every component; `margin_override` replaces per-component
    /// margins.
    pub fn to_system(&self, margin_override: Option<u32>) -> Result<SystemEmbedding, CliError> {
        let solids = self.solids()?;
        let mut components = Vec::with_capacity(solids.len());
        for (i, (c, solid)) in self.components.iter().zip(solids).enumerate() {
            let at = |field: &str, e: &dyn std::fmt::Display, name: &'static str| {
                let sep = if field.is_empty() { "" } else { "." };
                CliError::domain(name, format!("components[{i}]{sep}{field}: {e}"))
            };
            let m =
                EdgeCycle::new(c.marking.m.clone()).map_err(|e| at("marking.m", &e, e.name()))?;
            let l =
                EdgeCycle::new(c.marking.l.clone()).map_err(|e| at("marking.l", &e, e.name()))?;
            let margin = margin_override
                .or(c.box_margin)
                .unwrap_or(DEFAULT_BOX_MARGIN);
            let e = MarkedTorusEmbedding::with_margin(solid, m, l, margin)
                .map_err(|e| at("", &e, e.name()))?;
            components.push(e);
        }
        SystemEmbedding::new(components).map_err(|e| CliError::domain(e.name(), e.to_string()))
    }
}
