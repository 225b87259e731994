#include "qidiff/cipher.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace qidiff::cipher {

namespace {

uint64_t mask_bits(int w) { return w >= 64 ? ~0ull : ((1ull << w) - 1); }

void validate(CipherSpec& spec) {
    if (spec.n < 2 || spec.n > 64 || spec.n % 4 != 0) throw ConfigError("block size n must be a multiple of 4 in [4, 64]");
    if (spec.m < 1 || spec.m > 64) throw ConfigError("key size m must be in [1, 64]");
    if (spec.r < 1 || spec.r > 64) throw ConfigError("round count r must be in [1, 64]");
    if (spec.family == Family::feistel) {
        if (spec.n != 8) throw ConfigError("feistel family is defined for n = 8 (two 4-bit halves)");
        if (spec.m < 4) throw ConfigError("feistel key must have at least 4 bits");
    } else {
        if (spec.m != spec.n) throw ConfigError("spn family requires m = n");
        // XOR round keys demand a bijective S layer.
        std::array<bool, 16> seen{};
        for (uint8_t v : spec.sbox) {
            if (v > 15 || seen[v]) throw ConfigError("sbox is not a bijection on 4 bits");
            seen[v] = true;
        }
        for (int i = 0; i < 16; ++i) spec.sbox_inv[spec.sbox[i]] = static_cast<uint8_t>(i);
        if (static_cast<int>(spec.perm.size()) != spec.n) throw ConfigError("perm must list n positions");
        std::vector<bool> hit(spec.n + 1, false);
        for (int t : spec.perm) {
            if (t < 1 || t > spec.n || hit[t]) throw ConfigError("perm is not a permutation of 1..n");
            hit[t] = true;
        }
        spec.perm_inv.assign(spec.n, 0);
        for (int j = 1; j <= spec.n; ++j) spec.perm_inv[spec.perm[j - 1] - 1] = j;
    }
    if (spec.schedule < 0) throw ConfigError("schedule rotation must be >= 0");
}

uint64_t apply_perm(const std::vector<int>& perm, int n, uint64_t x) {
    uint64_t out = 0;
    for (int j = 1; j <= n; ++j) {
        uint64_t bit = (x >> (n - j)) & 1;
        out |= bit << (n - perm[j - 1]);
    }
    return out;
}

uint64_t sbox_layer(const std::array<uint8_t, 16>& box, int n, uint64_t x) {
    uint64_t out = 0;
    for (int nib = 0; nib < n / 4; ++nib) out |= static_cast<uint64_t>(box[(x >> (4 * nib)) & 0xF]) << (4 * nib);
    return out;
}

}  // namespace

CipherSpec load_cipher_json(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("cipher config parse error: ") + e.what());
    }
    CipherSpec spec;
    try {
        spec.name = j.at("name").get<std::string>();
        spec.n = j.at("n").get<int>();
        spec.m = j.at("m").get<int>();
        spec.r = j.at("r").get<int>();
        std::string fam = j.at("family").get<std::string>();
        if (fam == "feistel")
            spec.family = Family::feistel;
        else if (fam == "spn")
            spec.family = Family::spn;
        else
            throw ConfigError("unknown family '" + fam + "'");
        auto sbox = j.at("sbox");
        if (!sbox.is_array() || sbox.size() != 16) throw ConfigError("sbox must be a 16-entry hex list");
        for (int i = 0; i < 16; ++i) {
            std::string h = sbox[i].get<std::string>();
            spec.sbox[i] = static_cast<uint8_t>(std::stoul(h, nullptr, 16));
        }
        if (j.contains("perm")) spec.perm = j.at("perm").get<std::vector<int>>();
        spec.schedule = j.at("schedule").get<int>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("cipher config field error: ") + e.what());
    } catch (const std::invalid_argument&) {
        throw ConfigError("cipher config has a malformed hex entry");
    }
    validate(spec);
    return spec;
}

CipherSpec load_cipher_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open cipher config '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return load_cipher_json(ss.str());
}

uint64_t round_key(const CipherSpec& spec, uint64_t master, int round) {
    uint64_t rotated = rotl_bits(master, (round * spec.schedule) % spec.m, spec.m);
    if (spec.family == Family::feistel) return rotated >> (spec.m - 4);  // top 4 bits
    return rotated;
}

uint64_t encrypt_round(const CipherSpec& spec, uint64_t rk, uint64_t x) {
    if (spec.family == Family::feistel) {
        uint64_t L = x >> 4, R = x & 0xF;
        return (R << 4) | (L ^ spec.sbox[(R ^ rk) & 0xF]);
    }
    return apply_perm(spec.perm, spec.n, sbox_layer(spec.sbox, spec.n, x ^ rk));
}

uint64_t decrypt_round(const CipherSpec& spec, uint64_t rk, uint64_t x) {
    if (spec.family == Family::feistel) {
        uint64_t A = x >> 4, B = x & 0xF;
        return ((B ^ spec.sbox[(A ^ rk) & 0xF]) << 4) | A;
    }
    return sbox_layer(spec.sbox_inv, spec.n, apply_perm(spec.perm_inv, spec.n, x)) ^ rk;
}

uint64_t encrypt_rounds(const CipherSpec& spec, uint64_t master, uint64_t x, int from, int to) {
    for (int i = from; i <= to; ++i) x = encrypt_round(spec, round_key(spec, master, i), x);
    return x;
}

uint64_t decrypt_rounds(const CipherSpec& spec, uint64_t master, uint64_t y, int from, int to) {
    for (int i = from; i >= to; --i) y = decrypt_round(spec, round_key(spec, master, i), y);
    return y;
}

uint64_t encrypt(const CipherSpec& spec, uint64_t master, uint64_t x) {
    return encrypt_rounds(spec, master, x, 1, spec.r);
}

uint64_t decrypt(const CipherSpec& spec, uint64_t master, uint64_t y) {
    return decrypt_rounds(spec, master, y, spec.r, 1);
}

FunctionView make_view(int N, int M, std::function<uint64_t(uint64_t)> f, std::string fingerprint,
                       int round_cost) {
    if (N < 1 || N > 64 || M < 1 || M > 64) throw TooLarge("view dimensions outside [1, 64]");
    FunctionView view;
    view.N = N;
    view.M = M;
    view.f = std::move(f);
    view.fingerprint = std::move(fingerprint);
    view.round_cost = round_cost;
    if (N <= 24) {
        auto table = std::make_shared<std::vector<uint32_t>>();
        table->resize(1ull << N);
        for (uint64_t x = 0; x < (1ull << N); ++x) (*table)[x] = static_cast<uint32_t>(view.f(x));
        view.table = std::move(table);
    }
    return view;
}

FunctionView prefix_view(const CipherSpec& spec, int r1) {
    if (r1 < 1 || r1 > spec.r - 1) throw BadSplit(r1, spec.r);
    if (spec.m + spec.n > 64) throw TooLarge("keyed view input " + std::to_string(spec.m + spec.n) + " bits exceeds 64");
    CipherSpec s = spec;
    int n = spec.n;
    return make_view(
        spec.m + spec.n, spec.n,
        [s, r1, n](uint64_t in) { return encrypt_rounds(s, in >> n, in & mask_bits(n), 1, r1); },
        spec.name + "/prefix/" + std::to_string(r1), r1);
}

FunctionView suffix_inverse_view(const CipherSpec& spec, int r2) {
    if (r2 < 1 || r2 > spec.r - 1) throw BadSplit(r2, spec.r);
    if (spec.m + spec.n > 64) throw TooLarge("keyed view input " + std::to_string(spec.m + spec.n) + " bits exceeds 64");
    CipherSpec s = spec;
    int n = spec.n;
    int r = spec.r;
    return make_view(
        spec.m + spec.n, spec.n,
        [s, r2, n, r](uint64_t in) { return decrypt_rounds(s, in >> n, in & mask_bits(n), r, r - r2 + 1); },
        spec.name + "/suffix_inv/" + std::to_string(r2), r2);
}

FunctionView component_view(const FunctionView& view, int i) {
    if (i < 1 || i > view.M) throw BadIndex(i, view.M);
    FunctionView out;
    out.N = view.N;
    out.M = 1;
    out.fingerprint = view.fingerprint + "/bit/" + std::to_string(i);
    out.round_cost = view.round_cost;
    int shift = view.M - i;
    if (view.table) {
        auto parent = view.table;
        auto table = std::make_shared<std::vector<uint32_t>>();
        table->resize(parent->size());
        for (std::size_t x = 0; x < parent->size(); ++x) (*table)[x] = ((*parent)[x] >> shift) & 1;
        out.table = std::move(table);
        out.f = [parent, shift](uint64_t x) { return ((*parent)[x] >> shift) & 1; };
    } else {
        auto f = view.f;
        out.f = [f, shift](uint64_t x) { return (f(x) >> shift) & 1; };
    }
    return out;
}

}  // namespace qidiff::cipher
