use whitehead::free_group::{whitehead_minimize, total_length};
use whitehead::oracle::{exhaustive_min_length, WordSampler};

fn main() {
    for (rank, seed, n) in [(2usize, 7u64, 120usize), (3, 11, 80)] {
        let mut sampler = WordSampler::new(seed);
        let t0 = std::time::Instant::now();
        let mut worst = std::time::Duration::ZERO;
        let mut agree = 0;
        for i in 0..n {
            let set = sampler.word_set(rank, 10);
            let t1 = std::time::Instant::now();
            let oracle = exhaustive_min_length(&set, 4_000_000).unwrap();
            let greedy = total_length(&whitehead_minimize(&set).unwrap().words);
            let dt = t1.elapsed();
            if dt > worst { worst = dt; eprintln!("rank{rank} sample {i}: {:?} lens={:?}", dt, set.iter().map(|w| w.len()).collect::<Vec<_>>()); }
            if oracle == greedy { agree += 1; }
        }
        println!("rank{rank}: {agree}/{n} total {:?} worst {:?}", t0.elapsed(), worst);
    }
}
