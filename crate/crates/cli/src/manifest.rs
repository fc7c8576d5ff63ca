//! JSON manifest form of the namespace registry, and the copy shipped in
//! the repository.

use rosetta_core::registry::{ModuleTag, NamespaceRegistry, BASE_CONFLICTS};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// The manifest file shipped with the registry.
pub const SHIPPED_MANIFEST_JSON: &str = include_str!("../../core/data/registry_manifest.json");

/// One manifest row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestFunction {
    /// Compatibility function name.
    pub name: String,
    /// Owning module.
    pub module_tag: ModuleTag,
    /// Conflict flag; must agree with the frozen conflict list.
    pub conflicts_with_base: bool,
}

/// Serializable registry: the function list, sorted by name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegistryManifest {
    /// All registered functions.
    pub functions: Vec<ManifestFunction>,
}

/// Manifest problems found while converting to a registry.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ManifestError {
    /// The JSON did not parse.
    #[error("manifest does not parse: {0}")]
    Parse(String),
    /// A name appeared twice.
    #[error("duplicate manifest entry `{0}`")]
    Duplicate(String),
    /// A conflict flag disagrees with the frozen conflict list.
    #[error("conflict flag for `{name}` must be {expected} (frozen conflict list)")]
    ConflictFlagMismatch {
        /// Offending name.
        name: String,
        /// The flag the frozen list dictates.
        expected: bool,
    },
}

impl RegistryManifest {
    /// Manifest view of a registry, sorted by name.
    pub fn from_registry(registry: &NamespaceRegistry) -> Self {
        let functions = registry
            .entries()
            .map(|(name, entry)| ManifestFunction {
                name: name.to_string(),
                module_tag: entry.module_tag,
                conflicts_with_base: entry.conflicts_with_base,
            })
            .collect();
        Self { functions }
    }

    /// Parses a manifest from JSON text.
    pub fn from_json(text: &str) -> Result<Self, ManifestError> {
        serde_json::from_str(text).map_err(|e| ManifestError::Parse(e.to_string()))
    }

    /// Stable JSON rendering (entries sorted by name, two-space indent).
    pub fn to_json(&self) -> String {
        let mut sorted = self.clone();
        sorted.functions.sort_by(|a, b| a.name.cmp(&b.name));
        serde_json::to_string_pretty(&sorted).expect("manifest serializes")
    }

    /// Builds the registry, validating uniqueness and conflict flags.
    pub fn to_registry(&self) -> Result<NamespaceRegistry, ManifestError> {
        let mut registry = NamespaceRegistry::new();
        for f in &self.functions {
            if registry.entry(&f.name).is_some() {
                return Err(ManifestError::Duplicate(f.name.clone()));
            }
            let expected = BASE_CONFLICTS.contains(&f.name.as_str());
            if f.conflicts_with_base != expected {
                return Err(ManifestError::ConflictFlagMismatch {
                    name: f.name.clone(),
                    expected,
                });
            }
            registry.register(&f.name, f.module_tag);
        }
        Ok(registry)
    }
}

/// Parses the manifest shipped in the repository.
pub fn shipped_manifest() -> Result<RegistryManifest, ManifestError> {
    RegistryManifest::from_json(SHIPPED_MANIFEST_JSON)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rosetta_core::registry::{default_registry, Resolution};

    #[test]
    fn shipped_manifest_matches_built_in_registry() {
        let manifest = shipped_manifest().unwrap();
        let from_code = RegistryManifest::from_registry(&default_registry());
        assert_eq!(manifest, from_code);
        let registry = manifest.to_registry().unwrap();
        assert_eq!(registry, default_registry());
    }

    #[test]
    fn manifest_roundtrips_through_json() {
        let manifest = RegistryManifest::from_registry(&default_registry());
        let json = manifest.to_json();
        let back = RegistryManifest::from_json(&json).unwrap();
        assert_eq!(back, manifest);
    }

    #[test]
    fn conflict_flag_mismatch_is_rejected() {
        let mut manifest = shipped_manifest().unwrap();
        for f in &mut manifest.functions {
            if f.name == "max" {
                f.conflicts_with_base = false;
            }
        }
        assert_eq!(
            manifest.to_registry(),
            Err(ManifestError::ConflictFlagMismatch {
                name: "max".to_string(),
                expected: true,
            })
        );
    }

    #[test]
    fn duplicate_names_are_rejected() {
        let mut manifest = shipped_manifest().unwrap();
        let dup = manifest.functions[0].clone();
        manifest.functions.push(dup);
        assert!(matches!(
            manifest.to_registry(),
            Err(ManifestError::Duplicate(_))
        ));
    }

    #[test]
    fn registry_answers_the_module_import_example() {
        let registry = shipped_manifest().unwrap().to_registry().unwrap();
        assert_eq!(
            registry.resolve("max"),
            Resolution::CompatRequiresImport(ModuleTag::MathTools)
        );
        assert_eq!(
            registry.with_import(ModuleTag::MathTools).resolve("max"),
            Resolution::CompatExported
        );
    }
}
