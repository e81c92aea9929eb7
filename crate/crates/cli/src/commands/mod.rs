pub mod compare;
pub mod jam;
pub mod simulate;
pub mod theory;

use std::path::PathBuf;

use crate::config::Settings;
use crate::table::{Format, Sink};

/// Resolved settings and output options shared by all commands.
pub struct Context {
    pub command: &'static str,
    pub settings: Settings,
    pub out_dir: PathBuf,
    pub format: Format,
    /// Raw bytes of the config file, if any.
    pub config_bytes: Vec<u8>,
}

impl Context {
    pub fn sink(&self) -> Sink<'_, Settings> {
        Sink {
            dir: self.out_dir.clone(),
            format: self.format,
            command: self.command,
            seed: self.settings.seed(),
            config: &self.settings,
            inputs: self.config_bytes.clone(),
        }
    }
}
