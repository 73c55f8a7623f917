//! Labeled synthetic log corpora.
//!
//! Nine small "systems" imitate the flavour of widely used public log
//! benchmarks (web server, supercomputer RAS, distributed file system, mobile
//! health app, cluster manager, desktop OS, cloud controller, data-processing
//! engine, OS servicing). Each system is a weighted list of patterns whose
//! `{kind:arg}` slots are filled with random values; the ground-truth template
//! is the pattern with every slot replaced by `<*>`.
//!
//! These corpora stand in for the public datasets wherever those are not
//! available: in tests, in the book, and as the default fixtures of the
//! acceptance suite.
//!
//! Numbers, addresses and ids are drawn from small ranges, so they repeat
//! much as in real logs, while free-text slots produce fresh multi-token
//! phrases. Most distinct variable values in a variable pool built from
//! these systems therefore span several tokens.
//!
//! Slot kinds:
//!
//! | slot | value |
//! |------|-------|
//! | `{int:lo-hi}` | integer in `lo..=hi` |
//! | `{hex:n}` | `n` lowercase hex digits |
//! | `{float}` | decimal like `0.317` or `12.5` |
//! | `{ip}` / `{port}` / `{mac}` | network addresses |
//! | `{url}` | request path plus protocol, two tokens |
//! | `{blk}` | signed 19-digit block id, 400 distinct |
//! | `{uuid}` | 8-4-4-4-12 hex, 64 distinct |
//! | `{time}` | `HH:MM:SS` |
//! | `{path:/prefix}` | prefix plus 1-3 random segments |
//! | `{choice:a|b|c}` | one alternative (may contain spaces) |
//! | `{words:lo-hi}` | `lo..=hi` vocabulary words, space separated |

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus::{Dataset, LogRecord, Template};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct SyntheticSystem {
    pub name: &'static str,
    pub patterns: Vec<(&'static str, u32)>,
}

#[derive(Debug, Clone)]
enum Part {
    Lit(String),
    Slot(Slot),
}

#[derive(Debug, Clone)]
enum Slot {
    Int(u64, u64),
    Hex(usize),
    Float,
    Ip,
    Port,
    Url,
    Mac,
    Blk,
    Uuid,
    Time,
    Path(String),
    Choice(Vec<String>),
    Words(usize, usize),
}

#[derive(Debug, Clone)]
struct Pattern {
    parts: Vec<Part>,
    template: Template,
}

fn parse_range(arg: &str, pattern: &str) -> Result<(u64, u64)> {
    let bad = || Error::Config(format!("bad range {arg:?} in pattern {pattern:?}"));
    let (lo, hi) = arg.split_once('-').ok_or_else(bad)?;
    let lo: u64 = lo.parse().map_err(|_| bad())?;
    let hi: u64 = hi.parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn parse_slot(spec: &str, pattern: &str) -> Result<Slot> {
    let (kind, arg) = spec.split_once(':').unwrap_or((spec, ""));
    Ok(match kind {
        "int" => {
            let (lo, hi) = parse_range(arg, pattern)?;
            Slot::Int(lo, hi)
        }
        "hex" => Slot::Hex(arg.parse().map_err(|_| {
            Error::Config(format!("bad hex width {arg:?} in pattern {pattern:?}"))
        })?),
        "float" => Slot::Float,
        "ip" => Slot::Ip,
        "port" => Slot::Port,
        "url" => Slot::Url,
        "mac" => Slot::Mac,
        "blk" => Slot::Blk,
        "uuid" => Slot::Uuid,
        "time" => Slot::Time,
        "path" => Slot::Path(arg.to_string()),
        "choice" => Slot::Choice(arg.split('|').map(str::to_string).collect()),
        "words" => {
            let (lo, hi) = parse_range(arg, pattern)?;
            Slot::Words(lo.max(1) as usize, hi.max(1) as usize)
        }
        other => {
            return Err(Error::Config(format!(
                "unknown slot kind {other:?} in pattern {pattern:?}"
            )))
        }
    })
}

fn compile(pattern: &str) -> Result<Pattern> {
    let mut parts = Vec::new();
    let mut template = String::new();
    let mut rest = pattern;
    while let Some(open) = rest.find('{') {
        let close = rest[open..]
            .find('}')
            .map(|c| open + c)
            .ok_or_else(|| Error::Config(format!("unclosed slot in pattern {pattern:?}")))?;
        if open > 0 {
            parts.push(Part::Lit(rest[..open].to_string()));
            template.push_str(&rest[..open]);
        }
        parts.push(Part::Slot(parse_slot(&rest[open + 1..close], pattern)?));
        template.push_str("<*>");
        rest = &rest[close + 1..];
    }
    if !rest.is_empty() {
        parts.push(Part::Lit(rest.to_string()));
        template.push_str(rest);
    }
    Ok(Pattern {
        parts,
        template: Template::new(&template)?,
    })
}

const VOCAB: &[&str] = &[
    "alpha", "beacon", "cache", "daemon", "ember", "falcon", "gateway", "harbor", "index",
    "jitter", "kernel", "lattice", "mirror", "nimbus", "orbit", "parcel", "quorum", "relay",
    "socket", "tunnel", "uplink", "vector", "widget", "xenon", "yield", "zephyr", "Adaptive",
    "Broker", "Checkpoint", "Dispatcher", "Endpoint", "Failover", "Gossip", "Heartbeat",
    "Ingress", "Journal", "Keystore", "Listener", "Manifest", "Notifier", "Observer",
    "Pipeline", "Quota", "Replica", "Scheduler", "Throttle", "Upstream", "Validator",
    "Watchdog", "(timeout)", "[retry]", "{backoff}", "<lease>", "user@host", "key=value",
    "50%", "$HOME", "~/.cache", "a+b", "x^2", "#tag", "semi;colon", "pipe|bar", "back\\slash",
    "quote'd", "ok!", "why?", "star*", "amp&", "tilde~", "at@", "grave`", "ünïcode", "naïve",
    "café", "Zürich", "señal", "ÅLand", "données", "größe", "déjà", "fiancé", "über", "ßtrasse",
    "nil", "NaN", "null", "true", "false", "EOF", "SIGTERM", "SIGKILL", "ENOENT", "EAGAIN",
    "ECONNRESET", "refused", "degraded", "stale", "orphaned", "throttled", "evicted",
    "preempted", "quarantined", "rebalanced", "compacted", "rotated", "truncated", "flushed",
    "sealed", "unsealed", "pinned", "unpinned", "drained", "fenced",
];

fn hex(rng: &mut ChaCha8Rng, n: usize) -> String {
    (0..n)
        .map(|_| char::from_digit(rng.gen_range(0..16), 16).unwrap_or('0'))
        .collect()
}

fn fill(slot: &Slot, rng: &mut ChaCha8Rng) -> String {
    match slot {
        Slot::Int(lo, hi) => rng.gen_range(*lo..=*hi).to_string(),
        Slot::Hex(n) => hex(rng, *n),
        Slot::Float => {
            if rng.gen_bool(0.5) {
                format!("0.{:02}", rng.gen_range(0..100))
            } else {
                format!("{}.{}", rng.gen_range(1..60), rng.gen_range(0..10))
            }
        }
        Slot::Ip => format!(
            "10.{}.{}.{}",
            rng.gen_range(250..252),
            rng.gen_range(0..4),
            rng.gen_range(1..65)
        ),
        Slot::Port => {
            if rng.gen_bool(0.8) {
                ["50010", "8080", "443", "22", "9000", "5353"]
                    .choose(rng)
                    .copied()
                    .unwrap_or("80")
                    .to_string()
            } else {
                rng.gen_range(32768..61000).to_string()
            }
        }
        Slot::Url => format!(
            "/v2/{}/servers/{}{} HTTP/1.1",
            hex(rng, 8),
            ["detail", "action", "os-volume_attachments", "metadata"]
                .choose(rng)
                .copied()
                .unwrap_or("detail"),
            if rng.gen_bool(0.5) {
                format!("?changes-since={}", rng.gen_range(1..100))
            } else {
                String::new()
            }
        ),
        Slot::Mac => (0..6).map(|_| hex(rng, 2)).collect::<Vec<_>>().join(":"),
        // Block and instance ids recur across lines, as in real logs.
        Slot::Blk => {
            let mut id = ChaCha8Rng::seed_from_u64(rng.gen_range(0..400));
            let sign = if id.gen_bool(0.5) { "-" } else { "" };
            format!("{sign}{}", id.gen_range(1_000_000_000_000_000_000u64..=9_999_999_999_999_999_999))
        }
        Slot::Uuid => {
            let mut id = ChaCha8Rng::seed_from_u64(rng.gen_range(0..64));
            format!(
                "{}-{}-{}-{}-{}",
                hex(&mut id, 8),
                hex(&mut id, 4),
                hex(&mut id, 4),
                hex(&mut id, 4),
                hex(&mut id, 12)
            )
        }
        Slot::Time => format!(
            "{:02}:{:02}:{:02}",
            rng.gen_range(0..24),
            rng.gen_range(0..6) * 10,
            rng.gen_range(0..4) * 15
        ),
        Slot::Path(prefix) => {
            let depth = rng.gen_range(1..=3);
            let mut p = prefix.clone();
            for _ in 0..depth {
                p.push('/');
                p.push_str(VOCAB[rng.gen_range(0..26)]);
                if rng.gen_bool(0.5) {
                    p.push_str(&rng.gen_range(0..100).to_string());
                }
            }
            p
        }
        Slot::Choice(options) => options.choose(rng).cloned().unwrap_or_default(),
        Slot::Words(lo, hi) => {
            let n = rng.gen_range(*lo..=*hi);
            (0..n)
                .map(|_| *VOCAB.choose(rng).unwrap_or(&"word"))
                .collect::<Vec<_>>()
                .join(" ")
        }
    }
}

impl SyntheticSystem {
    /// Generates `n` labeled records named after the system.
    pub fn generate(&self, n: usize, seed: u64) -> Result<Dataset> {
        let patterns = self
            .patterns
            .iter()
            .map(|(p, _)| compile(p))
            .collect::<Result<Vec<_>>>()?;
        let total: u32 = self.patterns.iter().map(|(_, w)| w).sum();
        if total == 0 {
            return Err(Error::Config(format!("system {} has no weight", self.name)));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut records = Vec::with_capacity(n);
        for line_id in 1..=n {
            let mut pick = rng.gen_range(0..total);
            let mut idx = 0;
            for (i, (_, w)) in self.patterns.iter().enumerate() {
                if pick < *w {
                    idx = i;
                    break;
                }
                pick -= w;
            }
            let pattern = &patterns[idx];
            let mut content = String::new();
            for part in &pattern.parts {
                match part {
                    Part::Lit(s) => content.push_str(s),
                    Part::Slot(s) => content.push_str(&fill(s, &mut rng)),
                }
            }
            records.push(LogRecord::new(
                line_id,
                content,
                Some(pattern.template.clone()),
                self.name,
            )?);
        }
        Dataset::new(self.name, records)
    }

    /// Six templates with a heavily skewed frequency profile.
    pub fn apache_like() -> Self {
        SyntheticSystem {
            name: "apache-like",
            patterns: vec![
                ("jk2_init() Found child {int:1000-9999} in scoreboard slot {int:6-10}", 570),
                ("workerEnv.init() ok {choice:/etc/httpd/conf/workers2.properties|/etc/httpd/conf/workers.properties}", 560),
                ("mod_jk child workerEnv in error state {int:6-9}", 540),
                ("[client {ip}] Directory index forbidden by rule: {path:/var/www/html}", 30),
                ("jk2_init() Can't find child {int:1000-9999} in scoreboard", 30),
                ("mod_jk child init {choice:1|0} {choice:-2|-1}", 270),
            ],
        }
    }

    pub fn bgl_like() -> Self {
        SyntheticSystem {
            name: "bgl-like",
            patterns: vec![
                ("instruction cache parity error corrected", 180),
                ("generating core.{int:1-41}", 200),
                ("CE sym {int:0-40}, at {hex:8}, mask {hex:2}", 120),
                ("{int:1-9} ddr error(s) detected and corrected on rank {int:0-1}, symbol {int:0-40} over {int:100-140} seconds", 70),
                ("total of {int:1-20} ddr error(s) detected and corrected", 110),
                ("data TLB error interrupt", 60),
                ("ciod: failed to read message prefix on control stream (CioStream socket to {ip}:{port}", 70),
                ("ciod: LOGIN chdir({path:/p/gb1/stella}) failed: {words:3-9}", 405),
                ("machine check interrupt (bit={hex:8}): L2 dcache unit data parity error", 25),
                ("rts: kernel terminated for reason {int:1000-1010}", 40),
                ("Lustre mount FAILED : bglio{int:1-41} : {words:3-8}", 337),
                ("NFS Mount failed on bglio{int:1-41}, slept {int:1-41} seconds, retrying ({int:1-5})", 20),
                ("{int:1-41} floating point alignment exceptions", 80),
                ("MidplaneSwitchController performing bit sparing on {choice:R00-M0-N0|R01-M1-N4|R12-M0-NC} bit {int:0-40}", 15),
                ("idoproxydb hit ASSERT condition: ASSERT expression={choice:0|1} Source file={path:/bgl/BlueLight/ppcfloor} Source line={int:100-140} Function={choice:int Alloc|void Free|static void Teardown}", 12),
                ("fpr{int:0-31}={hex:8} {hex:8} {hex:8} {hex:8}", 40),
                ("program interrupt: {words:3-8} ........{int:0-1}", 202),
                ("critical input interrupt (unit={hex:2} bit={hex:2}): warning for {words:2-7} wire", 202),
                ("ddr: activating redundant bit steering: rank={int:0-1} symbol={int:0-40}", 6),
                ("Node card VPD check: {words:3-9} in node card {choice:J18|J03|J11}", 270),
                ("RAS KERNEL INFO {words:4-13}", 1012),
            ],
        }
    }

    pub fn hdfs_like() -> Self {
        SyntheticSystem {
            name: "hdfs-like",
            patterns: vec![
                ("Receiving block blk_{blk} src: /{ip}:{port} dest: /{ip}:{port}", 300),
                ("BLOCK* NameSystem.addStoredBlock: blockMap updated: {ip}:{port} is added to blk_{blk} size {choice:67108864|3542|91178}", 300),
                ("PacketResponder {int:0-2} for block blk_{blk} terminating", 300),
                ("Received block blk_{blk} of size {choice:67108864|3542|91178} from /{ip}", 300),
                ("BLOCK* NameSystem.allocateBlock: {path:/user/root/rand} blk_{blk}", 100),
                ("Verification succeeded for blk_{blk}", 60),
                ("Deleting block blk_{blk} file {path:/mnt/hadoop/dfs/data/current}", 120),
                ("{ip}:{port} Served block blk_{blk} to /{ip}", 80),
                ("BLOCK* ask {ip}:{port} to replicate blk_{blk} to datanode(s) {ip}:{port}", 10),
                ("{ip}:{port}:Got exception while serving blk_{blk} to /{ip}: {words:3-10}", 405),
                ("BLOCK* NameSystem.delete: blk_{blk} is added to invalidSet of {ip}:{port}", 90),
                ("writeBlock blk_{blk} received exception java.io.IOException: {words:3-10}", 540),
                ("PacketResponder blk_{blk} {int:0-2} Exception {words:3-10}", 405),
            ],
        }
    }

    pub fn healthapp_like() -> Self {
        SyntheticSystem {
            name: "healthapp-like",
            patterns: vec![
                ("onStandStepChanged {int:1000-1040}", 250),
                ("onExtend:{int:1000-1040}:{int:0-9}:{int:0-9}", 150),
                ("REPORT : {int:1000-1040} {int:0-9} {int:1000-1040} {int:0-9}", 200),
                ("processHandleBroadcastAction action:{choice:android.intent.action.SCREEN_ON|android.intent.action.SCREEN_OFF|android.intent.action.TIME_TICK}", 180),
                ("setTodayTotalDetailSteps={int:1000-1040}##{int:1000-1040}##{int:100-140}##{int:1000-1040}", 180),
                ("flush sensor data", 90),
                ("screen status unknown,think screen on", 40),
                ("upLoadOneMinuteDataToEngine time={int:1000-1040},step={int:0-40},mode={int:0-3}", 120),
                ("calculateCaloriesWithCache totalCalories={int:10000-10040}", 150),
                ("getTodayTotalDetailSteps = {int:1000-1040}##{int:1000-1040}", 100),
                ("onReceive action: {words:2-8}", 810),
                ("Step counter reset because {words:3-10}", 810),
                ("getStepCounterFromDB {words:2-7} user={choice:root|guest|jdoe} steps={int:0-40}", 405),
            ],
        }
    }

    pub fn hpc_like() -> Self {
        SyntheticSystem {
            name: "hpc-like",
            patterns: vec![
                ("ServerFileSystem domain {choice:storage1|storage3|storage433} is full", 80),
                ("Component State Change: Component \"{choice:alt0|scsi-WWID:01000010:6005-08b4-0001-00c6-0006-3000-003d-0000|server-1}\" is in the unavailable state (HWID={int:1000-1040})", 120),
                ("PSU status ( {choice:on|off} {choice:on|off} )", 200),
                ("Fan speeds ( {int:3500-3540} {int:3500-3540} {int:3500-3540} {int:3500-3540} )", 200),
                ("node-{int:0-40} not responding", 150),
                ("Temperature ({int:30-70}C) exceeds warning threshold", 120),
                ("ClusterFileSystem: There is no server for ServerFileSystem domain {choice:storage433|storage1}", 70),
                ("running running", 280),
                ("halt", 40),
                ("boot (command {int:1000-1040})", 130),
                ("Link error on broadcast tree Interconnect-{int:0-9}{choice:T|N}{int:0-9}:{int:0-9}", 80),
                ("risBoot command {choice:failed|completed} on node {choice:node-12|node-131|node-40}", 10),
                ("inconsistent nodesets node-{int:0-40} {hex:4} != {hex:4} in {words:3-8}", 270),
                ("{choice:Temperature|Voltage|Fan} sensor reports {words:3-10}", 540),
            ],
        }
    }

    pub fn mac_like() -> Self {
        SyntheticSystem {
            name: "mac-like",
            patterns: vec![
                ("ARPT: {int:600000-600040}.{int:100000-100040}: wl0: setup_keepalive: interval {int:800-840}, retry_interval {int:20-40}, retry_count {int:5-15}", 120),
                ("ARPT: {int:600000-600040}.{int:100000-100040}: wl0: MDNS: IPV4 Addr: {ip}", 80),
                ("Sandbox: {choice:com.apple.Addres(8934)|QQ(1234)|Safari(402)} deny(1) {choice:file-read-metadata|mach-lookup|network-outbound} {path:/Users/authorMacBook/Library}", 90),
                ("network changed: v4(en0-:{ip}) v6(en0:{hex:4}::{hex:4}:{hex:4}) DNS! Proxy SMB", 60),
                ("CCFile::captureLog Received Capture notice id={float}, reason = {words:3-10}", 675),
                ("Bluetooth -- LE is supported - Disable LE meta event", 40),
                ("en0: BSSID changed to {mac}", 50),
                ("{choice:com.apple.cts|com.apple.xpc.launchd|com.apple.CDScheduler}[{int:1-41}] scheduler {words:2-8}: {int:0-40}% done", 540),
                ("Alert: {words:4-13}", 1012),
                ("AirPort: Link {choice:Up|Down} on awdl0", 40),
                ("Calling -[NSOperationQueue {choice:addOperation:|cancelAllOperations]} ~{int:0-9}ms ({words:2-7})", 270),
                ("WindowServer: CGXDisplayDidWakeNotification [{int:100000000000-100000000040}]: posting kCGSDisplayDidWake", 40),
                ("kernel[0]: PM response took {int:1000-1040} ms ({int:1-41}, {choice:powerd|WindowServer|mds})", 40),
                ("mDNSResponder[{int:50-90}]: mDNS_DeregisterInterface: Frequent transitions for interface en0 ({ip})", 30),
                ("{time} authorMacBook-Pro {choice:corecaptured|symptomsd|locationd}[{int:100-140}]: {words:3-12}", 1350),
                ("Google Chrome Helper[{int:1000-1040}]: Couldn't set {choice:selectedTextBackgroundColor|selectedTextColor} from default ()", 25),
                ("Unable to simultaneously satisfy constraints: \"<NSLayoutConstraint:{hex:12} H:|-({int:0-40})-[NSView:{hex:12}]>\"", 15),
                ("tm-notify ^{int:1-9}$ => ~{words:2-7} #{int:0-40} & {choice:ok|fail}", 202),
                ("USB Msc: Send command = {hex:2}, status = {hex:8}, port = {int:1-8}, interface = {choice:<none>|XHC1@14|EHC2@1a}", 12),
                ("QQ[{int:1000-1040}]: button report: {hex:2}, {hex:2}, ({words:2-8})", 270),
                ("com.apple.AddressBook.InternetAccountsBridge[{int:1000-1040}]: dnssd_clientstub {words:3-9} error", 270),
                ("hibernate_page_list_setall(preflight {int:0-1}) start {hex:16}, {hex:16}", 8),
                ("IO80211AWDLPeerManager::setAwdlSuspendedMode() Suspending AWDL, enterQuietMode(true)", 10),
            ],
        }
    }

    pub fn openstack_like() -> Self {
        SyntheticSystem {
            name: "openstack-like",
            patterns: vec![
                ("{ip} \"{choice:GET|POST|DELETE} {url}\" status: {choice:200|202|204|404} len: {int:1500-1540} time: {float}", 4725),
                ("[instance: {uuid}] VM {choice:Started|Stopped|Paused|Resumed} (Lifecycle Event)", 200),
                ("[instance: {uuid}] Took {float} seconds to {choice:spawn|build|deallocate network for} the instance on the hypervisor.", 160),
                ("Successfully synced instances from host '{choice:cp-1.slowvm1.tcloud-pg0.utah.cloudlab.us|cp-2.slowvm1.tcloud-pg0.utah.cloudlab.us}'.", 60),
                ("image {uuid} at ({path:/var/lib/nova/instances/_base}): checking", 100),
                ("Active base files: {path:/var/lib/nova/instances/_base}", 70),
                ("[instance: {uuid}] Claim successful", 90),
                ("Total {choice:memory|disk|vcpu}: {int:1-41} {choice:MB|GB|VCPU}, used: {float} {choice:MB|GB|VCPU}", 110),
                ("[instance: {uuid}] Attempting claim: memory {int:512-552} MB, disk {int:1-41} GB, vcpus {int:1-8} CPU", 90),
                ("Running instance usage audit for host {choice:cp-1.slowvm1|cp-2.slowvm1} from {time} to {time}. {int:0-9} instances.", 20),
                ("Unknown base file: {path:/var/lib/nova/instances/_base}", 15),
                ("[instance: {uuid}] Terminating instance", 60),
                ("[instance: {uuid}] {words:4-12}", 810),
            ],
        }
    }

    pub fn spark_like() -> Self {
        SyntheticSystem {
            name: "spark-like",
            patterns: vec![
                ("Found block rdd_{int:0-40}_{int:0-10} locally", 300),
                ("Finished task {float} in stage {float} (TID {int:0-40}). {int:1000-1040} bytes result sent to driver", 300),
                ("Running task {float} in stage {float} (TID {int:0-40})", 300),
                ("Started reading broadcast variable {int:0-40}", 150),
                ("Block broadcast_{int:0-40}_piece0 stored as bytes in memory (estimated size {float} KB, free {float} KB)", 150),
                ("Reading broadcast variable {int:0-40} took {int:1-41} ms", 150),
                ("Partition rdd_{int:0-40}_{int:0-10} not found, computing it", 120),
                ("Got assigned task {int:0-40}", 200),
                ("Executor is trying to kill task {float} in stage {float} (TID {int:0-40})", 20),
                ("Registered signal handlers for [{choice:TERM, HUP, INT|TERM|HUP}]", 10),
                ("Changing {choice:view|modify} acls to: {choice:yarn,curi|yarn|curi}", 20),
                ("Input split: {path:hdfs://10.10.34.11:9000/pjhe/test}:{int:0-40}+{int:1000-1040}", 60),
                ("MemoryStore started with capacity {float} {choice:GB|MB}", 15),
                ("Exception in task {float} in stage {float} (TID {int:0-40}): {words:3-11}", 810),
                ("Removed {words:2-8} on {ip}:{port} in memory", 540),
            ],
        }
    }

    pub fn windows_like() -> Self {
        SyntheticSystem {
            name: "windows-like",
            patterns: vec![
                ("Loaded Servicing Stack v{int:6-10}.{int:0-9}.{int:1000-1040}.{int:10000-10040} with Core: {path:C:\\Windows\\winsxs\\amd64}\\cbscore.dll", 80),
                ("Starting TrustedInstaller initialization.", 150),
                ("SQM: Initializing online with Windows opt-in: {choice:False|True}", 150),
                ("{hex:8}@{int:2016-2017}/{int:1-12}/{int:1-28}:{int:0-23}:{int:0-40}:{int:0-40}.{int:100-140} WcpInitialize (wcp.dll version {float}) called (stack @{hex:8})", 200),
                ("Session: {int:30000000-30000040}_{int:1000000000-1000000040} initialized by client {choice:WindowsUpdateAgent|SPP|DeploymentAgent}.", 300),
                ("Read out cached package applicability for package: Package_for_KB{int:2000000-2000040}~31bf3856ad364e35~amd64~~{int:6-10}.{int:0-9}.{int:1-9}.{int:0-9}, ApplicableState: {int:0-40}, CurrentState:{int:0-40}", 400),
                ("Warning: Unrecognized packageExtended attribute.", 300),
                ("Failed to internally open package. [HRESULT = {choice:0x800f0805|0x80070002} - {choice:CBS_E_INVALID_PACKAGE|ERROR_FILE_NOT_FOUND}]", 100),
                ("SQM: Cleaning up report files older than {int:1-30} days.", 60),
                ("Ending TrustedInstaller finalization.", 40),
                ("Idle processing thread terminated normally", 40),
                ("Trusted Installer is shutting down because: {choice:SHUTDOWN_REASON_AUTOSTOP|SHUTDOWN_REASON_SERVICE_STOP}", 12),
                ("NonStart: Checking to ensure startup processing was not required.", 20),
                ("Failed to {words:3-10} [HRESULT = {choice:0x800f0805|0x80070002}]", 810),
                ("Exec: {words:4-12}", 675),
            ],
        }
    }

    /// The nine systems, in a fixed order.
    pub fn all() -> Vec<Self> {
        vec![
            Self::apache_like(),
            Self::bgl_like(),
            Self::hdfs_like(),
            Self::healthapp_like(),
            Self::hpc_like(),
            Self::mac_like(),
            Self::openstack_like(),
            Self::spark_like(),
            Self::windows_like(),
        ]
    }
}

/// `n` records from each of the nine systems; system `i` uses seed `seed + i`.
pub fn corpus(n: usize, seed: u64) -> Result<Vec<Dataset>> {
    SyntheticSystem::all()
        .iter()
        .enumerate()
        .map(|(i, s)| s.generate(n, seed.wrapping_add(i as u64)))
        .collect()
}
