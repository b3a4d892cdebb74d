//! Versioned example configurations shipped with the binary.

pub struct Preset {
    pub name: &'static str,
    pub text: &'static str,
}

impl Preset {
    /// The leading comment line of the file.
    pub fn description(&self) -> &'static str {
        self.text.lines().next().and_then(|l| l.strip_prefix("# ")).unwrap_or("")
    }
}

macro_rules! presets {
    ($($name:literal),* $(,)?) => {
        &[$(Preset { name: $name, text: include_str!(concat!("../presets/", $name, ".toml")) }),*]
    };
}

pub const PRESETS: &[Preset] = presets!["free", "flux-1", "flux-wall", "constant-jump", "winding", "random-t2", "random-t4"];

pub fn get(name: &str) -> Option<&'static Preset> {
    PRESETS.iter().find(|p| p.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::ExperimentConfig;

    #[test]
    fn all_presets_parse() {
        for p in PRESETS {
            let c = ExperimentConfig::parse(p.text, p.name).unwrap_or_else(|e| panic!("{}: {e}", p.name));
            assert_eq!(c.name, p.name);
            assert!(!p.description().is_empty());
        }
    }
}
