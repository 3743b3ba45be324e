use std::path::Path;

fn main() {
    let scheme = Path::new("vendor/hqc-128");
    let common = Path::new("vendor/common");

    let mut files: Vec<_> = std::fs::read_dir(scheme)
        .expect("vendor/hqc-128 is missing")
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "c"))
        .collect();
    files.push(common.join("fips202.c"));
    files.sort();

    cc::Build::new()
        .include(scheme)
        .include(common)
        .files(&files)
        .warnings(false)
        .compile("pqies_hqc128");

    println!("cargo:rerun-if-changed=vendor");
}
