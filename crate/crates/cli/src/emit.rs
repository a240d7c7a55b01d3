//! Output plumbing: stdout or atomic file writes (temp-then-rename, so a
//! crash never leaves a half-written artifact).

use std::io::Write;
use std::path::Path;

use crate::error::CliResult;

pub fn write_text(path: Option<&str>, content: &str) -> CliResult<()> {
    match path {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(content.as_bytes())?;
            Ok(())
        }
        Some(path) => {
            let target = Path::new(path);
            let dir = target.parent().filter(|p| !p.as_os_str().is_empty());
            let file_name = target
                .file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_else(|| "out".to_string());
            let tmp_name = format!(".{file_name}.tmp{}", std::process::id());
            let tmp = match dir {
                Some(d) => d.join(&tmp_name),
                None => std::path::PathBuf::from(&tmp_name),
            };
            std::fs::write(&tmp, content)?;
            std::fs::rename(&tmp, target)?;
            Ok(())
        }
    }
}

pub fn to_pretty_json<T: serde::Serialize>(value: &T) -> CliResult<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}
