use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

/// Collects written files and resolved parameters for the manifest.
pub struct Output {
    dir: PathBuf,
    entries: Vec<(String, String)>,
    files: Vec<String>,
}

impl Output {
    pub fn create(dir: &Path, experiment: &str) -> std::io::Result<Self> {
        fs::create_dir_all(dir)?;
        Ok(Output {
            dir: dir.to_path_buf(),
            entries: vec![
                ("experiment".into(), experiment.into()),
                ("version".into(), env!("CARGO_PKG_VERSION").into()),
            ],
            files: Vec::new(),
        })
    }

    pub fn record(&mut self, key: &str, value: impl ToString) {
        self.entries.push((key.to_string(), value.to_string()));
    }

    /// Writes `name` through `body` and registers it in the manifest.
    pub fn write(
        &mut self,
        name: &str,
        body: impl FnOnce(&mut BufWriter<File>) -> std::io::Result<()>,
    ) -> std::io::Result<()> {
        let mut w = BufWriter::new(File::create(self.dir.join(name))?);
        body(&mut w)?;
        w.flush()?;
        self.files.push(name.to_string());
        Ok(())
    }

    pub fn finish(mut self) -> std::io::Result<PathBuf> {
        self.entries.push(("files".into(), self.files.join(";")));
        let path = self.dir.join("manifest.txt");
        let mut w = BufWriter::new(File::create(&path)?);
        for (k, v) in &self.entries {
            writeln!(w, "{k}={v}")?;
        }
        w.flush()?;
        Ok(path)
    }
}
