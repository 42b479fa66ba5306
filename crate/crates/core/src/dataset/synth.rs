//! Synthetic KDD-99 style connection records.
//!
//! The generator draws records whose attack mix follows the 10% training
//! file's subcategory proportions and whose feature values follow coarse
//! per-attack traffic profiles (ICMP echo floods for `smurf`, half-open TCP
//! floods for `neptune`, sweeps with high reject rates for probes, and so
//! on). It exists so the pipeline, the examples and the test-suite can run
//! without the external dataset; it is not a substitute for it when
//! absolute accuracy figures matter.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, LogNormal};

use super::kdd::{
    category_names, CategoryMap, N_FEATURES, TEN_PERCENT_CATEGORY_TOTALS,
    TEN_PERCENT_SUBCATEGORIES,
};
use super::subsample::proportional_allocation;
use super::{load_kdd_lines, LabeledDataset};
use crate::error::Result;

// column indices
const DURATION: usize = 0;
const SRC_BYTES: usize = 4;
const DST_BYTES: usize = 5;
const LAND: usize = 6;
const WRONG_FRAGMENT: usize = 7;
const URGENT: usize = 8;
const HOT: usize = 9;
const NUM_FAILED_LOGINS: usize = 10;
const LOGGED_IN: usize = 11;
const NUM_COMPROMISED: usize = 12;
const ROOT_SHELL: usize = 13;
const SU_ATTEMPTED: usize = 14;
const NUM_ROOT: usize = 15;
const NUM_FILE_CREATIONS: usize = 16;
const NUM_SHELLS: usize = 17;
const NUM_ACCESS_FILES: usize = 18;
const IS_GUEST_LOGIN: usize = 21;
const COUNT: usize = 22;
const SRV_COUNT: usize = 23;
const SERROR_RATE: usize = 24;
const SRV_SERROR_RATE: usize = 25;
const RERROR_RATE: usize = 26;
const SRV_RERROR_RATE: usize = 27;
const SAME_SRV_RATE: usize = 28;
const DIFF_SRV_RATE: usize = 29;
const SRV_DIFF_HOST_RATE: usize = 30;
const DST_HOST_COUNT: usize = 31;
const DST_HOST_SRV_COUNT: usize = 32;
const DST_HOST_SAME_SRV_RATE: usize = 33;
const DST_HOST_DIFF_SRV_RATE: usize = 34;
const DST_HOST_SAME_SRC_PORT_RATE: usize = 35;
const DST_HOST_SRV_DIFF_HOST_RATE: usize = 36;
const DST_HOST_SERROR_RATE: usize = 37;
const DST_HOST_SRV_SERROR_RATE: usize = 38;
const DST_HOST_RERROR_RATE: usize = 39;
const DST_HOST_SRV_RERROR_RATE: usize = 40;

fn is_rate(column: usize) -> bool {
    (SERROR_RATE..=SRV_DIFF_HOST_RATE).contains(&column) || column >= DST_HOST_SAME_SRV_RATE
}

const SERVICES: [&str; 24] = [
    "auth", "bgp", "courier", "csnet_ns", "ctf", "daytime", "discard", "domain", "echo",
    "eco_i", "finger", "ftp", "ftp_data", "gopher", "http", "imap4", "link", "netbios_ns",
    "other", "pop_3", "private", "smtp", "telnet", "whois",
];

struct Conn {
    protocol: &'static str,
    service: &'static str,
    flag: &'static str,
    x: [f64; N_FEATURES],
}

struct Gen {
    rng: ChaCha8Rng,
}

impl Gen {
    fn chance(&mut self, p: f64) -> bool {
        self.rng.random_bool(p)
    }

    fn int(&mut self, lo: u32, hi: u32) -> f64 {
        self.rng.random_range(lo..=hi) as f64
    }

    fn lognorm(&mut self, median: f64, sigma: f64) -> f64 {
        let d = LogNormal::new(median.ln(), sigma).expect("valid lognormal");
        d.sample(&mut self.rng).round()
    }

    fn rate(&mut self, center: f64, spread: f64) -> f64 {
        let v = center + spread * (self.rng.random::<f64>() * 2.0 - 1.0);
        (v.clamp(0.0, 1.0) * 100.0).round() / 100.0
    }

    fn pick(&mut self, items: &[&'static str]) -> &'static str {
        items.choose(&mut self.rng).copied().expect("nonempty")
    }

    fn conn(&self, protocol: &'static str, service: &'static str, flag: &'static str) -> Conn {
        Conn {
            protocol,
            service,
            flag,
            x: [0.0; N_FEATURES],
        }
    }

    fn host_traffic(&mut self, c: &mut Conn) {
        c.x[DST_HOST_COUNT] = self.int(1, 255);
        c.x[DST_HOST_SRV_COUNT] = self.int(1, 255);
        c.x[DST_HOST_SAME_SRV_RATE] = self.rate(0.6, 0.4);
        c.x[DST_HOST_DIFF_SRV_RATE] = self.rate(0.05, 0.05);
        c.x[DST_HOST_SAME_SRC_PORT_RATE] = self.rate(0.1, 0.1);
        c.x[DST_HOST_SRV_DIFF_HOST_RATE] = self.rate(0.05, 0.05);
    }

    fn normal(&mut self) -> Conn {
        let roll: f64 = self.rng.random();
        let mut c = if roll < 0.55 {
            let mut c = self.conn("tcp", "http", "SF");
            c.x[SRC_BYTES] = self.lognorm(250.0, 0.4);
            c.x[DST_BYTES] = self.lognorm(2500.0, 1.0);
            c
        } else if roll < 0.67 {
            let mut c = self.conn("tcp", "smtp", "SF");
            c.x[SRC_BYTES] = self.lognorm(1000.0, 0.6);
            c.x[DST_BYTES] = self.lognorm(330.0, 0.2);
            c
        } else if roll < 0.77 {
            let mut c = self.conn("tcp", "ftp_data", "SF");
            c.x[SRC_BYTES] = self.lognorm(2000.0, 1.5);
            if self.chance(0.3) {
                c.x[DST_BYTES] = self.lognorm(2000.0, 1.5);
            }
            c
        } else if roll < 0.87 {
            let mut c = self.conn("udp", "domain_u", "SF");
            c.x[SRC_BYTES] = self.lognorm(44.0, 0.2);
            c.x[DST_BYTES] = self.lognorm(100.0, 0.3);
            c
        } else if roll < 0.92 {
            let mut c = self.conn("udp", "private", "SF");
            c.x[SRC_BYTES] = self.lognorm(105.0, 0.1);
            c.x[DST_BYTES] = self.lognorm(146.0, 0.1);
            c
        } else if roll < 0.95 {
            let service = self.pick(&["ecr_i", "eco_i", "urp_i"]);
            let mut c = self.conn("icmp", service, "SF");
            c.x[SRC_BYTES] = self.lognorm(30.0, 0.5);
            c
        } else {
            let service = self.pick(&["telnet", "ftp", "pop_3", "finger", "auth", "other"]);
            let mut c = self.conn("tcp", service, "SF");
            c.x[SRC_BYTES] = self.lognorm(300.0, 1.2);
            c.x[DST_BYTES] = self.lognorm(1500.0, 1.5);
            c.x[DURATION] = self.lognorm(60.0, 1.5);
            c
        };
        if c.protocol == "tcp" {
            c.x[LOGGED_IN] = 1.0;
            if self.chance(0.03) {
                c.flag = self.pick(&["REJ", "S0", "RSTO", "S1"]);
                c.x[LOGGED_IN] = 0.0;
            }
        }
        if self.chance(0.08) {
            c.x[DURATION] = self.lognorm(100.0, 2.0);
        }
        if self.chance(0.05) {
            c.x[HOT] = self.int(1, 5);
        }
        if c.service == "ftp" && self.chance(0.3) {
            c.x[IS_GUEST_LOGIN] = 1.0;
        }
        if self.chance(0.01) {
            c.x[NUM_COMPROMISED] = self.int(1, 3);
        }
        if self.chance(0.005) {
            c.x[ROOT_SHELL] = 1.0;
            c.x[NUM_ROOT] = self.int(1, 5);
        }
        if self.chance(0.01) {
            c.x[NUM_FILE_CREATIONS] = self.int(1, 3);
        }
        if self.chance(0.005) {
            c.x[NUM_ACCESS_FILES] = 1.0;
        }
        c.x[COUNT] = if c.service == "domain_u" {
            self.int(1, 300)
        } else {
            self.int(1, 30)
        };
        c.x[SRV_COUNT] = c.x[COUNT] + self.int(0, 10);
        if c.flag == "REJ" {
            c.x[RERROR_RATE] = self.rate(0.5, 0.5);
            c.x[SRV_RERROR_RATE] = c.x[RERROR_RATE];
        } else if c.flag == "S0" {
            c.x[SERROR_RATE] = self.rate(0.5, 0.5);
            c.x[SRV_SERROR_RATE] = c.x[SERROR_RATE];
        }
        c.x[SAME_SRV_RATE] = if self.chance(0.9) { 1.0 } else { self.rate(0.5, 0.4) };
        c.x[DIFF_SRV_RATE] = if c.x[SAME_SRV_RATE] == 1.0 { 0.0 } else { self.rate(0.1, 0.1) };
        c.x[SRV_DIFF_HOST_RATE] = self.rate(0.1, 0.15);
        self.host_traffic(&mut c);
        if c.service == "http" {
            c.x[DST_HOST_SRV_COUNT] = self.int(100, 255);
            c.x[DST_HOST_SAME_SRV_RATE] = self.rate(0.95, 0.1);
        }
        c.x[DST_HOST_SERROR_RATE] = self.rate(0.01, 0.02);
        c.x[DST_HOST_RERROR_RATE] = self.rate(0.02, 0.05);
        c.x[DST_HOST_SRV_RERROR_RATE] = self.rate(0.01, 0.03);
        c
    }

    fn flood_traffic(&mut self, c: &mut Conn) {
        c.x[SAME_SRV_RATE] = 1.0;
        c.x[DST_HOST_COUNT] = 255.0;
        c.x[DST_HOST_SRV_COUNT] = if self.chance(0.95) { 255.0 } else { self.int(100, 254) };
        c.x[DST_HOST_SAME_SRV_RATE] = 1.0;
        c.x[DST_HOST_SAME_SRC_PORT_RATE] = if self.chance(0.9) { 1.0 } else { self.rate(0.6, 0.4) };
    }

    fn smurf(&mut self) -> Conn {
        let mut c = self.conn("icmp", "ecr_i", "SF");
        c.x[SRC_BYTES] = if self.chance(0.85) { 1032.0 } else { 520.0 };
        c.x[COUNT] = if self.chance(0.9) { 511.0 } else { self.int(100, 511) };
        c.x[SRV_COUNT] = c.x[COUNT];
        self.flood_traffic(&mut c);
        c
    }

    fn neptune(&mut self) -> Conn {
        let service = if self.chance(0.6) { "private" } else { self.pick(&SERVICES) };
        let rejected = self.chance(0.15);
        let mut c = self.conn("tcp", service, if rejected { "REJ" } else { "S0" });
        c.x[COUNT] = self.int(50, 300);
        c.x[SRV_COUNT] = self.int(1, 30);
        let (err, srv_err, host_err, host_srv_err) = if rejected {
            (RERROR_RATE, SRV_RERROR_RATE, DST_HOST_RERROR_RATE, DST_HOST_SRV_RERROR_RATE)
        } else {
            (SERROR_RATE, SRV_SERROR_RATE, DST_HOST_SERROR_RATE, DST_HOST_SRV_SERROR_RATE)
        };
        c.x[err] = 1.0;
        c.x[srv_err] = 1.0;
        c.x[host_err] = self.rate(0.97, 0.03);
        c.x[host_srv_err] = 1.0;
        c.x[SAME_SRV_RATE] = self.rate(0.05, 0.04);
        c.x[DIFF_SRV_RATE] = self.rate(0.06, 0.03);
        c.x[DST_HOST_COUNT] = 255.0;
        c.x[DST_HOST_SRV_COUNT] = self.int(1, 30);
        c.x[DST_HOST_SAME_SRV_RATE] = self.rate(0.05, 0.04);
        c.x[DST_HOST_DIFF_SRV_RATE] = self.rate(0.07, 0.03);
        c
    }

    fn back(&mut self) -> Conn {
        let flag = if self.chance(0.9) { "SF" } else { "RSTR" };
        let mut c = self.conn("tcp", "http", flag);
        c.x[SRC_BYTES] = 54540.0;
        c.x[DST_BYTES] = self.lognorm(8314.0, 0.05);
        c.x[HOT] = 2.0;
        c.x[LOGGED_IN] = 1.0;
        c.x[NUM_COMPROMISED] = 1.0;
        c.x[COUNT] = self.int(1, 10);
        c.x[SRV_COUNT] = c.x[COUNT];
        c.x[SAME_SRV_RATE] = 1.0;
        self.host_traffic(&mut c);
        c.x[DST_HOST_SRV_COUNT] = self.int(50, 255);
        c.x[DST_HOST_SAME_SRV_RATE] = 1.0;
        c
    }

    fn teardrop(&mut self) -> Conn {
        let mut c = self.conn("udp", "private", "SF");
        c.x[SRC_BYTES] = 28.0;
        c.x[WRONG_FRAGMENT] = 3.0;
        c.x[COUNT] = self.int(1, 100);
        c.x[SRV_COUNT] = c.x[COUNT];
        c.x[SAME_SRV_RATE] = 1.0;
        self.host_traffic(&mut c);
        c.x[DST_HOST_SAME_SRC_PORT_RATE] = self.rate(0.8, 0.2);
        c
    }

    fn pod(&mut self) -> Conn {
        let mut c = self.conn("icmp", "ecr_i", "SF");
        c.x[SRC_BYTES] = 1480.0;
        c.x[WRONG_FRAGMENT] = 1.0;
        c.x[COUNT] = self.int(1, 10);
        c.x[SRV_COUNT] = c.x[COUNT];
        c.x[SAME_SRV_RATE] = 1.0;
        self.host_traffic(&mut c);
        c
    }

    fn land(&mut self) -> Conn {
        let service = self.pick(&["finger", "telnet", "http", "private"]);
        let mut c = self.conn("tcp", service, "S0");
        c.x[LAND] = 1.0;
        c.x[COUNT] = 1.0;
        c.x[SRV_COUNT] = 1.0;
        c.x[SERROR_RATE] = 1.0;
        c.x[SRV_SERROR_RATE] = 1.0;
        c.x[SAME_SRV_RATE] = 1.0;
        c.x[DST_HOST_COUNT] = self.int(1, 10);
        c.x[DST_HOST_SRV_COUNT] = c.x[DST_HOST_COUNT];
        c.x[DST_HOST_SAME_SRV_RATE] = 1.0;
        c.x[DST_HOST_SAME_SRC_PORT_RATE] = 1.0;
        c.x[DST_HOST_SERROR_RATE] = self.rate(0.7, 0.3);
        c.x[DST_HOST_SRV_SERROR_RATE] = c.x[DST_HOST_SERROR_RATE];
        c
    }

    fn satan(&mut self) -> Conn {
        let protocol = if self.chance(0.9) { "tcp" } else { "udp" };
        let service = self.pick(&SERVICES);
        let flag = self.pick(&["REJ", "REJ", "S0", "SF", "RSTO"]);
        let mut c = self.conn(protocol, service, flag);
        if flag == "SF" {
            c.x[SRC_BYTES] = self.int(0, 50);
            c.x[DST_BYTES] = self.int(0, 400);
        }
        c.x[COUNT] = self.int(1, 500);
        c.x[SRV_COUNT] = self.int(1, 10);
        c.x[RERROR_RATE] = self.rate(0.7, 0.3);
        c.x[SRV_RERROR_RATE] = self.rate(0.7, 0.3);
        if flag == "S0" {
            c.x[SERROR_RATE] = self.rate(0.6, 0.4);
            c.x[SRV_SERROR_RATE] = c.x[SERROR_RATE];
        }
        c.x[SAME_SRV_RATE] = self.rate(0.1, 0.1);
        c.x[DIFF_SRV_RATE] = self.rate(0.8, 0.2);
        c.x[SRV_DIFF_HOST_RATE] = self.rate(0.2, 0.2);
        c.x[DST_HOST_COUNT] = self.int(1, 255);
        c.x[DST_HOST_SRV_COUNT] = self.int(1, 10);
        c.x[DST_HOST_SAME_SRV_RATE] = self.rate(0.05, 0.05);
        c.x[DST_HOST_DIFF_SRV_RATE] = self.rate(0.8, 0.2);
        c.x[DST_HOST_SAME_SRC_PORT_RATE] = self.rate(0.3, 0.3);
        c.x[DST_HOST_RERROR_RATE] = self.rate(0.8, 0.2);
        c.x[DST_HOST_SRV_RERROR_RATE] = self.rate(0.7, 0.3);
        c
    }

    fn ipsweep(&mut self) -> Conn {
        let mut c = if self.chance(0.9) {
            self.conn("icmp", "eco_i", "SF")
        } else {
            self.conn("icmp", "ecr_i", "SF")
        };
        c.x[SRC_BYTES] = if self.chance(0.5) { 8.0 } else { 18.0 };
        c.x[COUNT] = self.int(1, 2);
        c.x[SRV_COUNT] = self.int(1, 100);
        c.x[SAME_SRV_RATE] = 1.0;
        c.x[SRV_DIFF_HOST_RATE] = 1.0;
        c.x[DST_HOST_COUNT] = self.int(1, 100);
        c.x[DST_HOST_SRV_COUNT] = self.int(1, 100);
        c.x[DST_HOST_SAME_SRV_RATE] = 1.0;
        c.x[DST_HOST_SAME_SRC_PORT_RATE] = self.rate(0.9, 0.1);
        c.x[DST_HOST_SRV_DIFF_HOST_RATE] = self.rate(0.5, 0.2);
        c
    }

    fn portsweep(&mut self) -> Conn {
        let flag = self.pick(&["REJ", "RSTR", "RSTR", "REJ", "SF"]);
        let mut c = self.conn("tcp", "private", flag);
        if self.chance(0.3) {
            c.x[DURATION] = self.lognorm(5000.0, 1.0);
        }
        c.x[COUNT] = self.int(1, 2);
        c.x[SRV_COUNT] = self.int(1, 2);
        c.x[RERROR_RATE] = self.rate(0.8, 0.2);
        c.x[SRV_RERROR_RATE] = self.rate(0.8, 0.2);
        c.x[SAME_SRV_RATE] = 1.0;
        c.x[SRV_DIFF_HOST_RATE] = self.rate(0.3, 0.3);
        c.x[DST_HOST_COUNT] = self.int(1, 255);
        c.x[DST_HOST_SRV_COUNT] = 1.0;
        c.x[DST_HOST_SAME_SRV_RATE] = self.rate(0.05, 0.05);
        c.x[DST_HOST_DIFF_SRV_RATE] = self.rate(0.6, 0.3);
        c.x[DST_HOST_SAME_SRC_PORT_RATE] = 1.0;
        c.x[DST_HOST_RERROR_RATE] = self.rate(0.5, 0.5);
        c.x[DST_HOST_SRV_RERROR_RATE] = 1.0;
        c
    }

    fn nmap(&mut self) -> Conn {
        let mut c = match self.rng.random_range(0..3) {
            0 => self.conn("icmp", "eco_i", "SF"),
            1 => {
                let flag = self.pick(&["SH", "S0", "RSTOS0"]);
                self.conn("tcp", "private", flag)
            }
            _ => self.conn("udp", "private", "SF"),
        };
        c.x[SRC_BYTES] = self.int(0, 20);
        c.x[COUNT] = self.int(1, 5);
        c.x[SRV_COUNT] = c.x[COUNT];
        c.x[SAME_SRV_RATE] = 1.0;
        c.x[DST_HOST_COUNT] = self.int(1, 255);
        c.x[DST_HOST_SRV_COUNT] = self.int(1, 30);
        c.x[DST_HOST_SAME_SRV_RATE] = self.rate(0.3, 0.3);
        c.x[DST_HOST_DIFF_SRV_RATE] = self.rate(0.3, 0.3);
        c.x[DST_HOST_SAME_SRC_PORT_RATE] = self.rate(0.8, 0.2);
        c.x[DST_HOST_SRV_DIFF_HOST_RATE] = self.rate(0.3, 0.3);
        c
    }

    fn session(&mut self, c: &mut Conn) {
        c.x[LOGGED_IN] = 1.0;
        c.x[COUNT] = self.int(1, 3);
        c.x[SRV_COUNT] = c.x[COUNT];
        c.x[SAME_SRV_RATE] = 1.0;
        self.host_traffic(c);
        c.x[DST_HOST_COUNT] = self.int(1, 60);
        c.x[DST_HOST_SRV_COUNT] = self.int(1, 60);
    }

    fn warezclient(&mut self) -> Conn {
        let ftp = self.chance(0.3);
        let mut c = self.conn("tcp", if ftp { "ftp" } else { "ftp_data" }, "SF");
        if self.chance(0.5) {
            c.x[DURATION] = self.lognorm(300.0, 1.5);
        }
        c.x[SRC_BYTES] = self.lognorm(30000.0, 1.5);
        c.x[HOT] = self.int(0, 28);
        if ftp {
            c.x[IS_GUEST_LOGIN] = 1.0;
            c.x[DST_BYTES] = self.lognorm(1500.0, 1.0);
        }
        self.session(&mut c);
        c
    }

    fn guess_passwd(&mut self) -> Conn {
        let flag = if self.chance(0.6) { "RSTO" } else { "SF" };
        let mut c = self.conn("tcp", "telnet", flag);
        c.x[DURATION] = self.int(0, 5);
        c.x[SRC_BYTES] = self.int(125, 126);
        c.x[DST_BYTES] = 179.0;
        c.x[NUM_FAILED_LOGINS] = 1.0;
        c.x[COUNT] = 1.0;
        c.x[SRV_COUNT] = 1.0;
        c.x[SAME_SRV_RATE] = 1.0;
        c.x[DST_HOST_COUNT] = self.int(1, 255);
        c.x[DST_HOST_SRV_COUNT] = self.int(1, 50);
        c.x[DST_HOST_SAME_SRV_RATE] = self.rate(0.5, 0.5);
        c.x[DST_HOST_RERROR_RATE] = self.rate(0.4, 0.4);
        c.x[DST_HOST_SRV_RERROR_RATE] = self.rate(0.6, 0.4);
        c
    }

    fn warezmaster(&mut self) -> Conn {
        let mut c = self.conn("tcp", "ftp", "SF");
        c.x[DURATION] = self.lognorm(5000.0, 1.0);
        c.x[SRC_BYTES] = self.lognorm(1000.0, 1.0);
        c.x[DST_BYTES] = self.lognorm(500_000.0, 1.0);
        c.x[HOT] = self.int(0, 2);
        c.x[IS_GUEST_LOGIN] = 1.0;
        self.session(&mut c);
        c
    }

    fn imap(&mut self) -> Conn {
        let flag = self.pick(&["SH", "S0", "SF", "RSTO"]);
        let mut c = self.conn("tcp", "imap4", flag);
        if flag == "SF" {
            c.x[SRC_BYTES] = self.lognorm(500.0, 1.0);
            c.x[DST_BYTES] = self.lognorm(8000.0, 1.0);
            c.x[LOGGED_IN] = 1.0;
            c.x[ROOT_SHELL] = f64::from(self.chance(0.5));
        }
        c.x[COUNT] = self.int(1, 5);
        c.x[SRV_COUNT] = c.x[COUNT];
        c.x[SAME_SRV_RATE] = 1.0;
        c.x[DST_HOST_COUNT] = self.int(1, 30);
        c.x[DST_HOST_SRV_COUNT] = self.int(1, 30);
        c.x[DST_HOST_SAME_SRV_RATE] = self.rate(0.8, 0.2);
        c.x[DST_HOST_SERROR_RATE] = self.rate(0.3, 0.3);
        c
    }

    fn ftp_write(&mut self) -> Conn {
        let service = self.pick(&["ftp", "ftp_data"]);
        let mut c = self.conn("tcp", service, "SF");
        c.x[DURATION] = self.lognorm(100.0, 1.0);
        c.x[SRC_BYTES] = self.lognorm(300.0, 1.0);
        c.x[DST_BYTES] = self.lognorm(600.0, 1.5);
        c.x[HOT] = 2.0;
        c.x[NUM_FILE_CREATIONS] = 1.0;
        self.session(&mut c);
        c
    }

    fn multihop(&mut self) -> Conn {
        let service = self.pick(&["telnet", "ftp_data"]);
        let mut c = self.conn("tcp", service, "SF");
        c.x[DURATION] = self.lognorm(1000.0, 1.0);
        c.x[SRC_BYTES] = self.lognorm(1000.0, 1.0);
        c.x[DST_BYTES] = self.lognorm(20000.0, 1.0);
        c.x[HOT] = self.int(0, 5);
        c.x[NUM_COMPROMISED] = self.int(0, 2);
        c.x[NUM_FILE_CREATIONS] = self.int(0, 2);
        self.session(&mut c);
        c
    }

    fn phf(&mut self) -> Conn {
        let mut c = self.conn("tcp", "http", "SF");
        c.x[SRC_BYTES] = self.int(51, 60);
        c.x[DST_BYTES] = self.lognorm(8000.0, 0.3);
        c.x[HOT] = 1.0;
        c.x[NUM_COMPROMISED] = self.int(0, 1);
        self.session(&mut c);
        c
    }

    fn spy(&mut self) -> Conn {
        let mut c = self.conn("tcp", "telnet", "SF");
        c.x[DURATION] = self.lognorm(20000.0, 0.3);
        c.x[SRC_BYTES] = self.lognorm(1000.0, 0.5);
        c.x[DST_BYTES] = self.lognorm(30000.0, 0.5);
        c.x[HOT] = self.int(1, 5);
        c.x[NUM_FILE_CREATIONS] = self.int(0, 3);
        c.x[NUM_ACCESS_FILES] = self.int(0, 1);
        self.session(&mut c);
        c
    }

    fn privilege_escalation(&mut self, sub: &str) -> Conn {
        let service = if self.chance(0.8) { "telnet" } else { "ftp_data" };
        let mut c = self.conn("tcp", service, "SF");
        let (duration, src) = match sub {
            "buffer_overflow" => (150.0, 1500.0),
            "rootkit" => (300.0, 800.0),
            "loadmodule" => (80.0, 1200.0),
            _ => (40.0, 1000.0),
        };
        c.x[DURATION] = self.lognorm(duration, 1.0);
        c.x[SRC_BYTES] = self.lognorm(src, 0.8);
        c.x[DST_BYTES] = self.lognorm(4000.0, 1.0);
        c.x[HOT] = self.int(1, 3);
        c.x[NUM_COMPROMISED] = self.int(0, 2);
        c.x[ROOT_SHELL] = f64::from(self.chance(0.8));
        c.x[NUM_ROOT] = self.int(0, 3);
        c.x[NUM_FILE_CREATIONS] = self.int(0, 2);
        c.x[NUM_SHELLS] = self.int(0, 1);
        c.x[SU_ATTEMPTED] = f64::from(sub == "perl" && self.chance(0.3));
        c.x[URGENT] = f64::from(self.chance(0.05));
        self.session(&mut c);
        c
    }

    fn record(&mut self, sub: &str) -> Conn {
        match sub {
            "normal" => self.normal(),
            "smurf" => self.smurf(),
            "neptune" => self.neptune(),
            "back" => self.back(),
            "teardrop" => self.teardrop(),
            "pod" => self.pod(),
            "land" => self.land(),
            "satan" => self.satan(),
            "ipsweep" => self.ipsweep(),
            "portsweep" => self.portsweep(),
            "nmap" => self.nmap(),
            "warezclient" => self.warezclient(),
            "guess_passwd" => self.guess_passwd(),
            "warezmaster" => self.warezmaster(),
            "imap" => self.imap(),
            "ftp_write" => self.ftp_write(),
            "multihop" => self.multihop(),
            "phf" => self.phf(),
            "spy" => self.spy(),
            other => self.privilege_escalation(other),
        }
    }
}

fn format_record(c: &Conn, sub: &str) -> String {
    let mut out = String::with_capacity(160);
    for (j, v) in c.x.iter().enumerate() {
        match j {
            1 => out.push_str(c.protocol),
            2 => out.push_str(c.service),
            3 => out.push_str(c.flag),
            _ if is_rate(j) => out.push_str(&format!("{v:.2}")),
            _ => out.push_str(&format!("{v}")),
        }
        out.push(',');
    }
    out.push_str(sub);
    out.push('.');
    out
}

/// Record counts per subcategory for an `n_total`-row sample: categories
/// follow the 10% file's totals with at least two rows each, and rows are
/// shared out within a category by subcategory frequency.
pub fn subcategory_allocation(n_total: usize) -> Result<Vec<(&'static str, usize)>> {
    let per_category = proportional_allocation(&TEN_PERCENT_CATEGORY_TOTALS, n_total, 2)?;
    let mut out = Vec::new();
    for (cat, &take) in per_category.iter().enumerate() {
        let subs: Vec<(&'static str, usize)> = TEN_PERCENT_SUBCATEGORIES
            .iter()
            .filter(|(_, _, c)| *c == cat)
            .map(|&(name, n, _)| (name, n))
            .collect();
        let counts: Vec<usize> = subs.iter().map(|(_, n)| *n).collect();
        let alloc = proportional_allocation(&counts, take, 0)?;
        out.extend(subs.iter().zip(alloc).map(|(&(name, _), k)| (name, k)));
    }
    Ok(out)
}

/// `n_total` KDD-format lines (with trailing-period labels) in shuffled order.
pub fn generate_lines(n_total: usize, seed: u64) -> Result<Vec<String>> {
    let mut labels: Vec<&str> = subcategory_allocation(n_total)?
        .into_iter()
        .flat_map(|(name, k)| std::iter::repeat_n(name, k))
        .collect();
    let mut g = Gen {
        rng: ChaCha8Rng::seed_from_u64(seed),
    };
    rand::seq::SliceRandom::shuffle(labels.as_mut_slice(), &mut g.rng);
    Ok(labels
        .into_iter()
        .map(|sub| {
            let c = g.record(sub);
            format_record(&c, sub)
        })
        .collect())
}

/// Parsed synthetic dataset; same records as [`generate_lines`].
pub fn generate(n_total: usize, seed: u64) -> Result<LabeledDataset> {
    let ds = load_kdd_lines(generate_lines(n_total, seed)?, &CategoryMap::default())?;
    debug_assert_eq!(ds.categories, category_names());
    Ok(ds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::parse_kdd_record;

    #[test]
    fn allocation_matches_proportions() {
        let alloc = subcategory_allocation(1000).unwrap();
        assert_eq!(alloc.iter().map(|(_, k)| k).sum::<usize>(), 1000);
        let get = |n: &str| alloc.iter().find(|(s, _)| *s == n).unwrap().1;
        // 280790 / 494020 * 1000 = 568.4
        assert!((get("smurf") as i64 - 568).abs() <= 1);
        let u2r: usize = ["buffer_overflow", "rootkit", "loadmodule", "perl"]
            .iter()
            .map(|s| get(s))
            .sum();
        assert_eq!(u2r, 2);
    }

    #[test]
    fn lines_parse() {
        let lines = generate_lines(300, 5).unwrap();
        assert_eq!(lines.len(), 300);
        for (i, l) in lines.iter().enumerate() {
            parse_kdd_record(l, i + 1).unwrap();
        }
        let ds = generate(300, 5).unwrap();
        assert!(ds.category_counts().iter().all(|&c| c >= 2));
    }

    #[test]
    fn seeded() {
        assert_eq!(generate_lines(200, 9).unwrap(), generate_lines(200, 9).unwrap());
        assert_ne!(generate_lines(200, 9).unwrap(), generate_lines(200, 10).unwrap());
    }
}
