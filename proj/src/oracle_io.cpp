#include "psp/oracle_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "psp/crc64.hpp"
#include "psp/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "oracle serialization assumes a little-endian host");

namespace psp {

namespace {

constexpr char kMagic[4] = {'P', 'S', 'P', '1'};
constexpr std::uint64_t kCrcInit = 0xFFFFFFFFFFFFFFFFull;

class CrcWriter {
public:
    explicit CrcWriter(std::ostream& out) : out_(out) {}

    void write(const void* data, std::size_t size) {
        out_.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
        crc_ = crc64_update(crc_, data, size);
    }

    void write_u32(std::uint32_t v) { write(&v, sizeof v); }
    void write_u64(std::uint64_t v) { write(&v, sizeof v); }

    void finish() {
        std::uint64_t checksum = crc_ ^ kCrcInit;
        out_.write(reinterpret_cast<const char*>(&checksum), sizeof checksum);
        if (!out_) throw IoError("oracle write failed");
    }

private:
    std::ostream& out_;
    std::uint64_t crc_ = kCrcInit;
};

class CrcReader {
public:
    CrcReader(std::istream& in, const std::string& name, std::uint64_t payload_bytes)
        : in_(in), name_(name), remaining_(payload_bytes) {}

    void read(void* data, std::size_t size) {
        if (size > remaining_) fail("truncated oracle file");
        in_.read(static_cast<char*>(data), static_cast<std::streamsize>(size));
        if (static_cast<std::size_t>(in_.gcount()) != size) fail("truncated oracle file");
        crc_ = crc64_update(crc_, data, size);
        remaining_ -= size;
    }

    std::uint32_t read_u32() { std::uint32_t v; read(&v, sizeof v); return v; }
    std::uint64_t read_u64() { std::uint64_t v; read(&v, sizeof v); return v; }

    std::uint64_t remaining() const { return remaining_; }

    void verify_checksum() {
        if (remaining_ != 0) fail("oracle file has trailing data");
        std::uint64_t stored;
        in_.read(reinterpret_cast<char*>(&stored), sizeof stored);
        if (static_cast<std::size_t>(in_.gcount()) != sizeof stored) {
            fail("truncated oracle file");
        }
        if (stored != (crc_ ^ kCrcInit)) {
            throw ChecksumError(name_ + ": oracle checksum mismatch");
        }
    }

    [[noreturn]] void fail(const std::string& msg) const { throw IoError(name_ + ": " + msg); }

private:
    std::istream& in_;
    const std::string& name_;
    std::uint64_t remaining_;
    std::uint64_t crc_ = kCrcInit;
};

void write_u64_array(CrcWriter& w, std::span<const std::uint32_t> values) {
    std::vector<std::uint64_t> wide(values.begin(), values.end());
    w.write(wide.data(), wide.size() * sizeof(std::uint64_t));
}

void write_u64_array(CrcWriter& w, std::span<const std::size_t> values) {
    std::vector<std::uint64_t> wide(values.begin(), values.end());
    w.write(wide.data(), wide.size() * sizeof(std::uint64_t));
}

void write_matrix(CrcWriter& w, const Matrix& m) {
    w.write(m.data().data(), m.data().size() * sizeof(double));
}

void read_matrix(CrcReader& r, Matrix& m, std::size_t rows, std::size_t cols) {
    m = Matrix(rows, cols, 0.0);
    r.read(m.data().data(), rows * cols * sizeof(double));
}

}  // namespace

void write_oracle(std::ostream& out, const Oracle& o) {
    CrcWriter w(out);
    w.write(kMagic, sizeof kMagic);
    w.write_u32(kOracleFormatVersion);
    w.write_u64(o.n);
    w.write_u64(o.k);
    w.write_u64(o.b());

    write_u64_array(w, o.permutation);
    write_u64_array(w, o.partition.assignment);

    std::vector<std::uint8_t> packed((o.n + 7) / 8, 0);
    for (std::size_t v = 0; v < o.n; ++v) {
        if (o.partition.boundary_flags[v]) packed[v / 8] |= static_cast<std::uint8_t>(1u << (v % 8));
    }
    w.write(packed.data(), packed.size());

    write_u64_array(w, o.component_offset);
    for (const Matrix& m : o.component_tables) write_matrix(w, m);
    for (const Matrix& m : o.boundary_tables) write_matrix(w, m);
    w.finish();
}

Oracle read_oracle(std::istream& in, const std::string& name) {
    in.seekg(0, std::ios::end);
    const std::streamoff total = in.tellg();
    in.seekg(0, std::ios::beg);
    if (total < 0 || !in) throw IoError(name + ": cannot determine file size");
    if (static_cast<std::uint64_t>(total) < sizeof(kMagic) + 4 + 8) {
        throw IoError(name + ": truncated oracle file");
    }
    CrcReader r(in, name, static_cast<std::uint64_t>(total) - 8);

    char magic[4];
    r.read(magic, sizeof magic);
    if (std::memcmp(magic, kMagic, sizeof kMagic) != 0) {
        throw FormatVersionError(name + ": not an oracle file");
    }
    const std::uint32_t version = r.read_u32();
    if (version != kOracleFormatVersion) {
        throw FormatVersionError(name + ": unsupported oracle format version " +
                                 std::to_string(version));
    }

    Oracle o;
    const std::uint64_t n64 = r.read_u64();
    const std::uint64_t k64 = r.read_u64();
    const std::uint64_t b = r.read_u64();
    // Size sanity before any header-derived allocation: the fixed sections
    // alone need 16n + n/8 + 8(k+1) bytes, so both n and k are bounded by
    // the payload size and the arithmetic below cannot overflow.
    if (n64 > r.remaining() / 16 || k64 > r.remaining() / 8) {
        r.fail("truncated oracle file");
    }
    if (k64 < 1 || k64 > n64 || b > n64 || n64 > 0xffffffffull) {
        r.fail("inconsistent oracle header");
    }
    o.n = n64;
    o.k = static_cast<std::uint32_t>(k64);
    const std::uint64_t fixed = 16 * o.n + (o.n + 7) / 8 + 8 * (o.k + 1ull);
    if (r.remaining() < fixed) r.fail("truncated oracle file");

    o.permutation.resize(o.n);
    o.inverse_permutation.resize(o.n);
    for (std::size_t v = 0; v < o.n; ++v) {
        const std::uint64_t target = r.read_u64();
        if (target >= o.n) r.fail("permutation entry out of range");
        o.permutation[v] = static_cast<VertexId>(target);
    }
    for (std::size_t v = 0; v < o.n; ++v) o.inverse_permutation[o.permutation[v]] = static_cast<VertexId>(v);

    Partition& p = o.partition;
    p.k = o.k;
    p.assignment.resize(o.n);
    for (std::size_t v = 0; v < o.n; ++v) {
        const std::uint64_t c = r.read_u64();
        if (c >= o.k) r.fail("component assignment out of range");
        p.assignment[v] = static_cast<std::uint32_t>(c);
    }

    std::vector<std::uint8_t> packed((o.n + 7) / 8);
    r.read(packed.data(), packed.size());
    p.boundary_flags.resize(o.n);
    for (std::size_t v = 0; v < o.n; ++v) {
        p.boundary_flags[v] = (packed[v / 8] >> (v % 8)) & 1u;
    }

    o.component_offset.resize(o.k + 1);
    for (std::size_t c = 0; c <= o.k; ++c) o.component_offset[c] = r.read_u64();
    if (o.component_offset[0] != 0 || o.component_offset[o.k] != o.n) {
        r.fail("inconsistent component offsets");
    }

    // The reordered layout is contractual: components form ascending
    // contiguous ranges and boundary vertices prefix each range.
    p.component_members.assign(o.k, {});
    o.boundary_offset.assign(o.k + 1, 0);
    for (std::uint32_t c = 0; c < o.k; ++c) {
        const std::size_t lo = o.component_offset[c];
        const std::size_t hi = o.component_offset[c + 1];
        if (hi < lo || hi > o.n) r.fail("inconsistent component offsets");
        bool interior_seen = false;
        std::size_t boundary = 0;
        for (std::size_t v = lo; v < hi; ++v) {
            if (p.assignment[v] != c) r.fail("assignment does not match component offsets");
            if (p.boundary_flags[v]) {
                if (interior_seen) r.fail("boundary vertices must prefix each component");
                ++boundary;
            } else {
                interior_seen = true;
            }
            p.component_members[c].push_back(static_cast<VertexId>(v));
        }
        o.boundary_offset[c + 1] = o.boundary_offset[c] + boundary;
    }
    if (o.boundary_offset[o.k] != b) r.fail("boundary count does not match flags");
    o.boundary_vertex.reserve(b);
    for (std::size_t v = 0; v < o.n; ++v) {
        if (p.boundary_flags[v]) o.boundary_vertex.push_back(static_cast<VertexId>(v));
    }
    p.permutation = compute_reorder_permutation(p.k, p.assignment, p.boundary_flags);
    p.inverse_permutation.resize(o.n);
    for (std::size_t v = 0; v < o.n; ++v) {
        p.inverse_permutation[p.permutation[v]] = static_cast<VertexId>(v);
    }

    std::uint64_t table_bytes = 0;
    for (std::uint32_t c = 0; c < o.k; ++c) {
        const std::uint64_t size = o.component_size(c);
        table_bytes += 8 * (size * size + o.boundary_size(c) * b);
    }
    if (r.remaining() != table_bytes) {
        r.fail(r.remaining() < table_bytes ? "truncated oracle file"
                                           : "oracle file has trailing data");
    }

    o.component_tables.resize(o.k);
    for (std::uint32_t c = 0; c < o.k; ++c) {
        const std::size_t size = o.component_size(c);
        read_matrix(r, o.component_tables[c], size, size);
    }
    o.boundary_tables.resize(o.k);
    for (std::uint32_t c = 0; c < o.k; ++c) {
        read_matrix(r, o.boundary_tables[c], o.boundary_size(c), b);
    }
    r.verify_checksum();

    o.placement = place_components(o.k, 1);
    return o;
}

void save_oracle(const Oracle& o, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(path + ": cannot open for writing");
    write_oracle(out, o);
    out.flush();
    if (!out) throw IoError(path + ": oracle write failed");
}

Oracle load_oracle(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path + ": cannot open");
    return read_oracle(in, path);
}

std::string serialize_oracle(const Oracle& o) {
    std::ostringstream out(std::ios::binary);
    write_oracle(out, o);
    return std::move(out).str();
}

}  // namespace psp
