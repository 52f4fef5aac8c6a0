use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use flate2::write::GzEncoder;
use flate2::Compression;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn bin(name: &str) -> Command {
    let path = match name {
        "ri" => env!("CARGO_BIN_EXE_ri"),
        "ri-buildfasta" => env!("CARGO_BIN_EXE_ri-buildfasta"),
        "ri-align" => env!("CARGO_BIN_EXE_ri-align"),
        _ => unreachable!(),
    };
    Command::new(path)
}

fn run(cmd: &mut Command) -> Output {
    cmd.output().expect("failed to spawn")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn random_dna(rng: &mut StdRng, len: usize) -> Vec<u8> {
    (0..len).map(|_| b"ACGT"[rng.gen_range(0..4)]).collect()
}

fn write_fasta(path: &Path, records: &[(String, Vec<u8>)], gzip: bool) {
    let mut text = Vec::new();
    for (name, seq) in records {
        writeln!(text, ">{name}").unwrap();
        for line in seq.chunks(60) {
            text.extend_from_slice(line);
            text.push(b'\n');
        }
    }
    if gzip {
        let mut enc = GzEncoder::new(fs::File::create(path).unwrap(), Compression::default());
        enc.write_all(&text).unwrap();
        enc.finish().unwrap();
    } else {
        fs::write(path, text).unwrap();
    }
}

fn write_fastq(path: &Path, reads: &[(String, Vec<u8>)]) {
    let mut text = Vec::new();
    for (name, seq) in reads {
        writeln!(text, "@{name}").unwrap();
        text.extend_from_slice(seq);
        text.extend_from_slice(b"\n+\n");
        text.extend(std::iter::repeat_n(b'~', seq.len()));
        text.push(b'\n');
    }
    fs::write(path, text).unwrap();
}

/// 22 genomes sharing one 100 bp block, plus one pair sharing a second block.
struct Fixture {
    dir: tempfile::TempDir,
    genomes: Vec<(String, Vec<u8>)>,
    shared22: Vec<u8>,
    shared2: Vec<u8>,
}

impl Fixture {
    fn new() -> Self {
        let mut rng = StdRng::seed_from_u64(2042);
        let shared22 = random_dna(&mut rng, 100);
        let shared2 = random_dna(&mut rng, 100);
        let genomes = (0..22)
            .map(|i| {
                let mut seq = random_dna(&mut rng, 50 + i);
                seq.extend_from_slice(&shared22);
                seq.extend(random_dna(&mut rng, 80));
                if i < 2 {
                    seq.extend_from_slice(&shared2);
                    seq.extend(random_dna(&mut rng, 30));
                }
                (format!("gb:G{i:02}|Organism:Dengue"), seq)
            })
            .collect();
        Fixture {
            dir: tempfile::tempdir().unwrap(),
            genomes,
            shared22,
            shared2,
        }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn build(&self) -> PathBuf {
        let fasta = self.path("genome.fa.gz");
        write_fasta(&fasta, &self.genomes, true);
        fs::create_dir_all(self.path("out")).unwrap();
        let prefix = self.path("out/dengue");
        let out = run(bin("ri-buildfasta").arg("-o").arg(&prefix).arg(&fasta));
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        let summary = String::from_utf8_lossy(&out.stderr);
        assert!(
            summary.contains("n = ") && summary.contains("r = "),
            "{summary}"
        );
        prefix
    }
}

#[test]
fn build_writes_both_files() {
    let fx = Fixture::new();
    fx.build();
    assert!(fx.path("out/dengue.ri").exists());
    assert!(fx.path("out/dengue.1.ri").exists());
    let index = rindex::deserialize_index(&fx.path("out/dengue")).unwrap();
    assert_eq!(index.catalog().len(), 22);
    assert_eq!(index.catalog().entries()[0].name, "gb:G00|Organism:Dengue");
}

#[test]
fn build_algorithm_selection() {
    let fx = Fixture::new();
    let fasta = fx.path("g.fa");
    write_fasta(&fasta, &fx.genomes[..2], false);
    let ok = run(bin("ri-buildfasta")
        .args(["-b", "sais", "-o"])
        .arg(fx.path("s"))
        .arg(&fasta));
    assert!(ok.status.success());
    let bad = run(bin("ri-buildfasta")
        .args(["-b", "bigbwt", "-o"])
        .arg(fx.path("b"))
        .arg(&fasta));
    assert!(!bad.status.success());
    assert!(String::from_utf8_lossy(&bad.stderr).contains("unsupported construction algorithm"));
    assert!(!fx.path("b.ri").exists());
}

#[test]
fn build_errors() {
    let fx = Fixture::new();
    let missing = run(bin("ri-buildfasta").arg(fx.path("nope.fa")));
    assert!(!missing.status.success());
    assert!(String::from_utf8_lossy(&missing.stderr).contains("nope.fa"));

    let fasta = fx.path("g.fa");
    write_fasta(&fasta, &fx.genomes[..1], false);
    let unwritable = run(bin("ri-buildfasta")
        .arg("-o")
        .arg(fx.path("no/such/dir/x"))
        .arg(&fasta));
    assert!(!unwritable.status.success());
}

#[test]
fn build_default_prefix() {
    let fx = Fixture::new();
    let fasta = fx.path("genome.fa.gz");
    write_fasta(&fasta, &fx.genomes[..3], true);
    let out = run(bin("ri")
        .current_dir(fx.dir.path())
        .args(["build", "genome.fa.gz"]));
    assert!(out.status.success());
    assert!(fx.path("genome.ri").exists() && fx.path("genome.1.ri").exists());
}

#[test]
fn count_mode() {
    let fx = Fixture::new();
    let prefix = fx.build();
    let mut edited = fx.shared22.clone();
    edited[40] = if edited[40] == b'A' { b'C' } else { b'A' };
    let reads = vec![
        ("simulated.0".to_string(), fx.shared22.clone()),
        ("simulated.1".to_string(), fx.shared2.clone()),
        ("simulated.0.1edits".to_string(), edited),
        ("nothing".to_string(), b"NNNN".to_vec()),
    ];
    let fq = fx.path("reads.fq");
    write_fastq(&fq, &reads);
    let out = stdout(&run(bin("ri-align").arg("count").arg(&prefix).arg(&fq)));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), reads.len());
    assert_eq!(lines[0], "simulated.0\t100/100\t22");
    assert_eq!(lines[1], "simulated.1\t100/100\t2");
    assert!(
        lines[2].starts_with("simulated.0.1edits\t59/100\t"),
        "{}",
        lines[2]
    );
    assert_eq!(lines[3], "nothing\t0/4\t0");
}

#[test]
fn locate_with_max_hits() {
    let fx = Fixture::new();
    let prefix = fx.build();
    let fq = fx.path("reads.fq");
    write_fastq(&fq, &[("simulated.0".to_string(), fx.shared22.clone())]);
    let out = stdout(&run(bin("ri-align")
        .args(["--max-hits", "1", "locate"])
        .arg(&prefix)
        .arg(&fq)));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "@HD\tVN:1.6\tSO:unknown");
    assert_eq!(lines.iter().filter(|l| l.starts_with("@SQ")).count(), 22);
    assert_eq!(
        lines[1],
        format!(
            "@SQ\tSN:gb:G00|Organism:Dengue\tLN:{}",
            fx.genomes[0].1.len()
        )
    );
    let records: Vec<&str> = lines
        .iter()
        .copied()
        .filter(|l| !l.starts_with('@'))
        .collect();
    assert_eq!(records.len(), 1);
    let f: Vec<&str> = records[0].split('\t').collect();
    assert_eq!(f.len(), 12);
    assert_eq!(f[0], "simulated.0");
    assert_eq!(f[1], "0");
    assert_eq!(&f[4..9], &["255", "100M", "*", "0", "0"]);
    assert_eq!(f[11], "NH:i:22");

    // The reported coordinates really hold the read.
    let genome = fx.genomes.iter().find(|(n, _)| n == f[2]).unwrap();
    let pos: usize = f[3].parse().unwrap();
    assert_eq!(&genome.1[pos - 1..pos + 99], &fx.shared22[..]);
}

#[test]
fn locate_all_hits_and_max_range() {
    let fx = Fixture::new();
    let prefix = fx.build();
    let fq = fx.path("reads.fq");
    write_fastq(&fq, &[("pair".to_string(), fx.shared2.clone())]);

    let out = stdout(&run(bin("ri-align").arg("locate").arg(&prefix).arg(&fq)));
    let records: Vec<Vec<String>> = out
        .lines()
        .filter(|l| !l.starts_with('@'))
        .map(|l| l.split('\t').map(String::from).collect())
        .collect();
    assert_eq!(records.len(), 2);
    assert_eq!(records[0][1], "0");
    assert_eq!(records[1][1], "256");
    let mut names: Vec<&str> = records.iter().map(|r| r[2].as_str()).collect();
    names.sort();
    assert_eq!(names, ["gb:G00|Organism:Dengue", "gb:G01|Organism:Dengue"]);

    let out = stdout(&run(bin("ri-align")
        .args(["--max-range", "1", "locate"])
        .arg(&prefix)
        .arg(&fq)));
    let records: Vec<&str> = out.lines().filter(|l| !l.starts_with('@')).collect();
    assert_eq!(records.len(), 1);
    let f: Vec<&str> = records[0].split('\t').collect();
    assert_eq!(&f[1..6], &["4", "*", "0", "0", "*"]);
    assert_eq!(f[11], "NH:i:2");
}

#[test]
fn align_errors() {
    let fx = Fixture::new();
    let prefix = fx.build();
    let fq = fx.path("reads.fq");
    write_fastq(&fq, &[("r".to_string(), b"ACGT".to_vec())]);

    let missing = run(bin("ri-align").arg("count").arg(fx.path("absent")).arg(&fq));
    assert!(!missing.status.success());
    assert!(String::from_utf8_lossy(&missing.stderr).contains("absent.ri"));

    let bad = fx.path("bad.fq");
    fs::write(&bad, "@r\nACGT\n+\n~~\n").unwrap();
    assert!(!run(bin("ri-align").arg("count").arg(&prefix).arg(&bad))
        .status
        .success());

    assert!(!run(bin("ri-align").arg("search").arg(&prefix).arg(&fq))
        .status
        .success());
    for k in ["0", "-3"] {
        let out = run(bin("ri-align")
            .args(["--max-hits", k, "locate"])
            .arg(&prefix)
            .arg(&fq));
        assert!(!out.status.success());
    }
}

#[test]
fn output_is_deterministic_across_runs_and_threads() {
    let fx = Fixture::new();
    let prefix = fx.build();
    let mut rng = StdRng::seed_from_u64(3);
    let reads: Vec<(String, Vec<u8>)> = (0..9000)
        .map(|i| {
            let (_, g) = &fx.genomes[rng.gen_range(0..fx.genomes.len())];
            let len = rng.gen_range(5..40);
            let start = rng.gen_range(0..g.len() - len);
            (format!("read{i}"), g[start..start + len].to_vec())
        })
        .collect();
    let fq = fx.path("many.fq");
    write_fastq(&fq, &reads);
    for mode in ["count", "locate"] {
        let a = stdout(&run(bin("ri-align").arg(mode).arg(&prefix).arg(&fq)));
        let b = stdout(&run(bin("ri-align").arg(mode).arg(&prefix).arg(&fq)));
        let c = stdout(&run(bin("ri-align")
            .args(["-t", "4", mode])
            .arg(&prefix)
            .arg(&fq)));
        let d = stdout(&run(bin("ri").args(["align", mode]).arg(&prefix).arg(&fq)));
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert_eq!(a, d);
    }
}

fn naive_count(text: &[u8], pattern: &[u8]) -> (usize, usize) {
    let m = pattern.len();
    let (mut best, mut count) = (0, 0);
    for end in 0..text.len() {
        let mut k = 0;
        while k < m && k <= end && text[end - k] == pattern[m - 1 - k] {
            k += 1;
        }
        if k > best {
            (best, count) = (k, 1);
        } else if k == best && k > 0 {
            count += 1;
        }
    }
    (best, count)
}

#[test]
fn randomized_build_then_count_matches_oracle() {
    let mut rng = StdRng::seed_from_u64(99);
    for round in 0..5 {
        let dir = tempfile::tempdir().unwrap();
        let genomes: Vec<(String, Vec<u8>)> = (0..rng.gen_range(1..6))
            .map(|i| {
                let len = rng.gen_range(20..300);
                (
                    format!("s{i}"),
                    (0..len).map(|_| b"ACGTN"[rng.gen_range(0..5)]).collect(),
                )
            })
            .collect();
        let fasta = dir.path().join("g.fa");
        write_fasta(&fasta, &genomes, round % 2 == 0);
        let prefix = dir.path().join("idx");
        assert!(run(bin("ri-buildfasta").arg("-o").arg(&prefix).arg(&fasta))
            .status
            .success());

        let mut text = Vec::new();
        for (_, g) in &genomes {
            text.extend_from_slice(g);
            text.push(b'#');
        }
        let reads: Vec<(String, Vec<u8>)> = (0..50)
            .map(|i| {
                let len = rng.gen_range(1..25);
                (
                    format!("q{i}"),
                    (0..len).map(|_| b"ACGTN"[rng.gen_range(0..5)]).collect(),
                )
            })
            .collect();
        let fq = dir.path().join("q.fq");
        write_fastq(&fq, &reads);
        let out = stdout(&run(bin("ri-align").arg("count").arg(&prefix).arg(&fq)));
        for (line, (name, read)) in out.lines().zip(&reads) {
            let (m, occ) = naive_count(&text, read);
            assert_eq!(line, format!("{name}\t{m}/{}\t{occ}", read.len()));
        }
        assert_eq!(out.lines().count(), reads.len());
    }
}
