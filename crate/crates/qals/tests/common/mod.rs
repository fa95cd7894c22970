#![allow(dead_code)]

use std::io::{BufRead, BufReader, Read, Write};
use std::net::{TcpListener, TcpStream};
use std::sync::{Arc, Mutex};
use std::thread;

use serde_json::{json, Value};

#[derive(Debug, Clone)]
pub struct Recorded {
    pub method: String,
    pub path: String,
    pub body: String,
}

pub type Handler = dyn Fn(&str, &str, &str) -> (u16, String) + Send + Sync;

/// One-thread-per-connection HTTP/1.1 server on an ephemeral loopback port.
/// Every response closes its connection.
pub struct TestServer {
    pub url: String,
    pub requests: Arc<Mutex<Vec<Recorded>>>,
}

impl TestServer {
    pub fn start(handler: impl Fn(&str, &str, &str) -> (u16, String) + Send + Sync + 'static) -> Self {
        let listener = TcpListener::bind("127.0.0.1:0").unwrap();
        let url = format!("http://{}", listener.local_addr().unwrap());
        let requests = Arc::new(Mutex::new(Vec::new()));
        let handler: Arc<Handler> = Arc::new(handler);
        let log = Arc::clone(&requests);
        thread::spawn(move || {
            for stream in listener.incoming() {
                let Ok(stream) = stream else { continue };
                let (handler, log) = (Arc::clone(&handler), Arc::clone(&log));
                thread::spawn(move || serve(stream, &*handler, &log));
            }
        });
        Self { url, requests }
    }

    pub fn count(&self, method: &str, path: &str) -> usize {
        self.requests.lock().unwrap().iter().filter(|r| r.method == method && r.path == path).count()
    }

    pub fn sample_bodies(&self) -> Vec<Value> {
        self.requests
            .lock()
            .unwrap()
            .iter()
            .filter(|r| r.path == "/sample")
            .map(|r| serde_json::from_str(&r.body).unwrap())
            .collect()
    }
}

fn serve(stream: TcpStream, handler: &Handler, log: &Mutex<Vec<Recorded>>) {
    let mut reader = BufReader::new(stream.try_clone().unwrap());
    let mut line = String::new();
    if reader.read_line(&mut line).unwrap_or(0) == 0 {
        return;
    }
    let mut parts = line.split_whitespace();
    let method = parts.next().unwrap_or("").to_string();
    let path = parts.next().unwrap_or("").to_string();
    let mut content_length = 0;
    loop {
        let mut header = String::new();
        reader.read_line(&mut header).unwrap();
        let header = header.trim_end();
        if header.is_empty() {
            break;
        }
        if let Some((k, v)) = header.split_once(':') {
            if k.eq_ignore_ascii_case("content-length") {
                content_length = v.trim().parse().unwrap();
            }
        }
    }
    let mut body = vec![0; content_length];
    reader.read_exact(&mut body).unwrap();
    let body = String::from_utf8(body).unwrap();
    let (status, payload) = handler(&method, &path, &body);
    log.lock().unwrap().push(Recorded { method, path, body });
    let mut stream = stream;
    let _ = write!(
        stream,
        "HTTP/1.1 {status} X\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{payload}",
        payload.len()
    );
}

pub fn info_json(delta: f64, gamma: f64, max_nodes: usize) -> String {
    json!({"delta": delta, "gamma": gamma, "topology": "complete", "max_nodes": max_nodes}).to_string()
}

/// A service that answers every read with the exact ground state of the
/// posted weights.
pub fn exact_service(max_nodes: usize) -> TestServer {
    TestServer::start(move |method, path, body| match (method, path) {
        ("GET", "/info") => (200, info_json(2.0, 1.0, max_nodes)),
        ("POST", "/sample") => {
            let req: Value = serde_json::from_str(body).unwrap();
            let biases: Vec<f64> = serde_json::from_value(req["biases"].clone()).unwrap();
            let couplings: Vec<(usize, usize, f64)> = serde_json::from_value(req["couplings"].clone()).unwrap();
            let reads = req["num_reads"].as_u64().unwrap() as usize;
            let n = biases.len();
            let energy = |z: &[i64]| {
                let b: f64 = biases.iter().zip(z).map(|(h, &s)| h * s as f64).sum();
                let c: f64 = couplings.iter().map(|&(i, j, v)| v * (z[i] * z[j]) as f64).sum();
                b + c
            };
            let best = (0u32..1 << n)
                .map(|code| (0..n).map(|i| if code >> i & 1 == 1 { 1 } else { -1 }).collect::<Vec<i64>>())
                .min_by(|a, b| energy(a).total_cmp(&energy(b)))
                .unwrap();
            let e = energy(&best);
            (200, json!({"samples": vec![best; reads], "energies": vec![e; reads]}).to_string())
        }
        _ => (404, "{}".into()),
    })
}

/// A loopback address with nothing listening on it.
pub fn dead_endpoint() -> String {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let url = format!("http://{}", listener.local_addr().unwrap());
    drop(listener);
    url
}
