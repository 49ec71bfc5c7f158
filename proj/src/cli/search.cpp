#include "psc/search.hpp"

#include <atomic>
#include <condition_variable>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "psc/powersum.hpp"

namespace psc::search {
namespace {

using Json = nlohmann::json;

struct BlockResult {
    std::vector<Nat> found;
    std::vector<Failure> failures;
};

BlockResult scan_block(const Nat& first, const Nat& last, const Nat& m, std::uint64_t factor_cap) {
    BlockResult out;
    for (Nat n = first; n <= last; ++n) {
        try {
            if (powersum::is_member(n, m, factor_cap)) out.found.push_back(n);
        } catch (const FactorizationIncomplete& e) {
            out.failures.push_back({n, e.what()});
        }
    }
    return out;
}

Nat parse_field(const Json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_string())
        throw CheckpointMismatch(std::string("checkpoint field '") + key + "' missing or not a string");
    return arith::parse_nat(j[key].get<std::string>());
}

}  // namespace

std::string checkpoint_to_string(const Checkpoint& cp) {
    Json j;
    j["schema_version"] = cp.schema_version;
    j["modulus_m"] = cp.modulus_m.get_str();
    j["lo"] = cp.lo.get_str();
    j["hi"] = cp.hi.get_str();
    j["next_unscanned"] = cp.next_unscanned.get_str();
    j["block_size"] = std::to_string(cp.block_size);
    j["found"] = Json::array();
    for (const auto& n : cp.found) j["found"].push_back(n.get_str());
    j["failures"] = Json::array();
    for (const auto& f : cp.failures) j["failures"].push_back({{"n", f.n.get_str()}, {"message", f.message}});
    return j.dump(2) + "\n";
}

Checkpoint checkpoint_from_string(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw CheckpointMismatch(std::string("checkpoint is not valid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("schema_version") || !j["schema_version"].is_number_integer())
        throw CheckpointMismatch("checkpoint has no integer schema_version");
    Checkpoint cp;
    cp.schema_version = j["schema_version"].get<int>();
    if (cp.schema_version != kCheckpointSchemaVersion)
        throw CheckpointMismatch("checkpoint schema_version " + std::to_string(cp.schema_version) +
                                 " is not supported (expected " +
                                 std::to_string(kCheckpointSchemaVersion) + ")");
    cp.modulus_m = parse_field(j, "modulus_m");
    cp.lo = parse_field(j, "lo");
    cp.hi = parse_field(j, "hi");
    cp.next_unscanned = parse_field(j, "next_unscanned");
    const Nat bs = parse_field(j, "block_size");
    if (bs < 1 || !bs.fits_ulong_p()) throw CheckpointMismatch("checkpoint block_size out of range");
    cp.block_size = bs.get_ui();
    for (const auto& v : j.value("found", Json::array())) cp.found.push_back(arith::parse_nat(v.get<std::string>()));
    for (const auto& v : j.value("failures", Json::array()))
        cp.failures.push_back({arith::parse_nat(v.at("n").get<std::string>()), v.at("message").get<std::string>()});

    if (cp.next_unscanned < cp.lo || cp.next_unscanned > cp.hi + 1)
        throw CheckpointMismatch("checkpoint next_unscanned outside [lo, hi + 1]");
    for (const auto& n : cp.found)
        if (n < cp.lo || n >= cp.next_unscanned)
            throw CheckpointMismatch("checkpoint lists " + n.get_str() + " outside the scanned prefix");
    return cp;
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw CheckpointMismatch("cannot read checkpoint " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return checkpoint_from_string(buf.str());
}

void save_checkpoint(const Checkpoint& cp, const std::filesystem::path& path) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << checkpoint_to_string(cp);
        out.flush();
        if (!out) throw std::runtime_error("short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

Checkpoint run(const Options& options) {
    if (options.lo < 1 || options.lo > options.hi)
        throw std::invalid_argument("search: need 1 <= lo <= hi");
    if (options.m < 0) throw std::invalid_argument("search: m must be >= 0");
    if (options.block_size < 1) throw std::invalid_argument("search: block size must be >= 1");

    Checkpoint state;
    state.modulus_m = options.m;
    state.lo = options.lo;
    state.hi = options.hi;
    state.next_unscanned = options.lo;
    state.block_size = options.block_size;

    if (options.checkpoint && std::filesystem::exists(*options.checkpoint)) {
        Checkpoint saved = load_checkpoint(*options.checkpoint);
        if (saved.modulus_m != state.modulus_m || saved.lo != state.lo || saved.hi != state.hi ||
            saved.block_size != state.block_size)
            throw CheckpointMismatch("checkpoint " + options.checkpoint->string() +
                                     " was written for a different scan");
        if ((saved.next_unscanned - saved.lo) % saved.block_size != 0 && !saved.complete())
            throw CheckpointMismatch("checkpoint next_unscanned is not on a block boundary");
        state = std::move(saved);
    }
    if (state.complete()) return state;

    const Nat bs = Nat(static_cast<unsigned long>(options.block_size));
    const Nat first_block_nat = (state.next_unscanned - state.lo) / bs;
    const Nat block_count_nat = (state.hi - state.lo) / bs + 1;
    if (!block_count_nat.fits_ulong_p()) throw std::invalid_argument("search: range has too many blocks");
    const std::uint64_t first_block = first_block_nat.get_ui();
    std::uint64_t end_block = block_count_nat.get_ui();
    if (options.max_blocks) end_block = std::min(end_block, first_block + *options.max_blocks);

    std::atomic<std::uint64_t> next_block{first_block};
    std::mutex mu;
    std::condition_variable cv;
    std::map<std::uint64_t, BlockResult> done;
    std::exception_ptr worker_error;

    auto worker = [&] {
        for (;;) {
            const std::uint64_t b = next_block.fetch_add(1);
            if (b >= end_block) return;
            const Nat first = state.lo + bs * static_cast<unsigned long>(b);
            Nat last = first + bs - 1;
            if (last > state.hi) last = state.hi;
            BlockResult r;
            try {
                r = scan_block(first, last, state.modulus_m, options.factor_cap);
            } catch (...) {
                std::lock_guard lock(mu);
                if (!worker_error) worker_error = std::current_exception();
                next_block = end_block;
                cv.notify_all();
                return;
            }
            std::lock_guard lock(mu);
            done.emplace(b, std::move(r));
            cv.notify_all();
        }
    };

    const unsigned jobs = std::max(1u, options.jobs);
    std::vector<std::jthread> pool;
    pool.reserve(jobs);
    for (unsigned i = 0; i < jobs; ++i) pool.emplace_back(worker);

    for (std::uint64_t b = first_block; b < end_block; ++b) {
        BlockResult r;
        {
            std::unique_lock lock(mu);
            cv.wait(lock, [&] { return done.count(b) != 0 || worker_error; });
            if (worker_error) break;
            r = std::move(done.at(b));
            done.erase(b);
        }
        for (auto& n : r.found) state.found.push_back(std::move(n));
        for (auto& f : r.failures) state.failures.push_back(std::move(f));
        Nat next = state.lo + bs * static_cast<unsigned long>(b + 1);
        state.next_unscanned = next > state.hi ? Nat(state.hi + 1) : next;
        if (options.checkpoint) save_checkpoint(state, *options.checkpoint);
    }
    pool.clear();
    if (worker_error) std::rethrow_exception(worker_error);
    return state;
}

}  // namespace psc::search
