use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use kspringer::pipeline::{run, JobConfig};
use kspringer::realform::FormConfig;
use kspringer::rootdata::{set_cache_dir, RootSubsystem, RootSystem, TypeLabel};

fn b3_order() -> usize {
    RootSubsystem::full(Arc::new(RootSystem::new(TypeLabel::B, 3).unwrap()))
        .weyl_group()
        .unwrap()
        .len()
}

fn b3_file(dir: &Path) -> PathBuf {
    fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .find(|p| p.file_name().unwrap().to_string_lossy().contains("B3"))
        .expect("B3 cache file")
}

// The cache directory is process-global, so the scenarios share one test.
#[test]
fn cache_round_trip_and_recovery() {
    let dir = tempfile::tempdir().unwrap();
    set_cache_dir(Some(dir.path().to_path_buf()));

    assert_eq!(b3_order(), 48);
    let file = b3_file(dir.path());
    let good = fs::read_to_string(&file).unwrap();
    assert_eq!(b3_order(), 48);

    fs::write(&file, "not json").unwrap();
    assert_eq!(b3_order(), 48);
    assert_eq!(fs::read_to_string(&file).unwrap(), good);

    let mut entry: serde_json::Value = serde_json::from_str(&good).unwrap();
    entry["words"].as_array_mut().unwrap().pop();
    fs::write(&file, entry.to_string()).unwrap();
    assert_eq!(b3_order(), 48);
    assert_eq!(fs::read_to_string(&file).unwrap(), good);

    let mut entry: serde_json::Value = serde_json::from_str(&good).unwrap();
    entry["version"] = 999.into();
    fs::write(&file, entry.to_string()).unwrap();
    assert_eq!(b3_order(), 48);
    assert_eq!(fs::read_to_string(&file).unwrap(), good);

    let config = JobConfig::new(FormConfig::named("su(2,2)"));
    let cached = run(&config).unwrap();
    let again = run(&config).unwrap();
    set_cache_dir(None);
    let uncached = run(&config).unwrap();
    assert_eq!(cached, again);
    assert_eq!(cached, uncached);

    fs::remove_file(&file).unwrap();
    assert_eq!(b3_order(), 48);
    assert!(!file.exists());
}
