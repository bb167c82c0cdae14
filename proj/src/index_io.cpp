#include <zlib.h>

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "tgindex/index.hpp"

namespace tgi {

namespace {

constexpr std::uint8_t kMagic[4] = {'T', 'G', 'S', 'I'};
constexpr std::uint32_t kAlgorithmMask = 0x3;
constexpr std::uint32_t kShuffledOrderFlag = 0x4;

static_assert(std::endian::native == std::endian::little, "index I/O assumes a little-endian host");

std::uint32_t crc32_of(std::span<const std::uint8_t> bytes) {
    uLong crc = crc32(0L, Z_NULL, 0);
    // zlib takes uInt lengths; feed large buffers in chunks.
    constexpr std::size_t kChunk = 1u << 30;
    for (std::size_t off = 0; off < bytes.size(); off += kChunk) {
        const auto len = static_cast<uInt>(std::min(kChunk, bytes.size() - off));
        crc = crc32(crc, bytes.data() + off, len);
    }
    return static_cast<std::uint32_t>(crc);
}

class Writer {
public:
    template <typename T>
    void put(T value) {
        std::uint8_t raw[sizeof(T)];
        std::memcpy(raw, &value, sizeof(T));
        out_.insert(out_.end(), raw, raw + sizeof(T));
    }
    void put_bytes(std::span<const std::uint8_t> bytes) { out_.insert(out_.end(), bytes.begin(), bytes.end()); }
    std::vector<std::uint8_t>& bytes() { return out_; }

private:
    std::vector<std::uint8_t> out_;
};

class Reader {
public:
    explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    template <typename T>
    T get() {
        need(sizeof(T));
        T value;
        std::memcpy(&value, bytes_.data() + pos_, sizeof(T));
        pos_ += sizeof(T);
        return value;
    }
    std::span<const std::uint8_t> get_bytes(std::size_t n) {
        need(n);
        auto s = bytes_.subspan(pos_, n);
        pos_ += n;
        return s;
    }
    [[nodiscard]] std::size_t remaining() const noexcept { return bytes_.size() - pos_; }

private:
    void need(std::size_t n) const {
        if (remaining() < n) throw FormatError("index file truncated");
    }

    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> serialize(const SubstreamIndex& index) {
    const EdgeStream& stream = index.stream();
    const auto& params = index.params();
    Writer w;
    w.put_bytes(kMagic);
    w.put<std::uint32_t>(kIndexFormatVersion);
    std::uint32_t flags = static_cast<std::uint32_t>(params.algorithm) & kAlgorithmMask;
    if (params.order == VertexOrder::shuffled) flags |= kShuffledOrderFlag;
    w.put<std::uint32_t>(flags);
    w.put<std::uint32_t>(params.k);
    w.put<std::uint32_t>(static_cast<std::uint32_t>(stream.num_vertices()));
    w.put<std::uint64_t>(stream.num_edges());
    w.put<std::uint32_t>(params.h);
    w.put<std::uint64_t>(params.seed);

    for (const auto& label : stream.labels()) {
        w.put<std::uint32_t>(static_cast<std::uint32_t>(label.size()));
        w.put_bytes({reinterpret_cast<const std::uint8_t*>(label.data()), label.size()});
    }
    for (auto f : index.assignments()) w.put<std::uint32_t>(f);
    for (const auto& e : stream.edges()) {
        w.put<std::uint32_t>(e.tail);
        w.put<std::uint32_t>(e.head);
        w.put<std::uint64_t>(static_cast<std::uint64_t>(e.time));
        w.put<std::uint64_t>(static_cast<std::uint64_t>(e.transition));
    }
    for (std::uint32_t i = 1; i <= index.k(); ++i) {
        const auto ids = index.substream(i);
        w.put<std::uint64_t>(ids.size());
        for (EdgeId id : ids) w.put<std::uint64_t>(id);
    }
    for (std::uint32_t i = 1; i <= index.k(); ++i) {
        const auto entries = index.part(i).skip.entries();
        w.put<std::uint64_t>(entries.size());
        for (const auto& entry : entries) {
            w.put<std::uint32_t>(entry.vertex);
            w.put<std::uint64_t>(entry.position);
        }
    }
    w.put<std::uint32_t>(crc32_of(w.bytes()));
    return std::move(w.bytes());
}

SubstreamIndex deserialize(std::span<const std::uint8_t> bytes) {
    Reader r(bytes);
    const auto magic = r.get_bytes(4);
    if (!std::equal(magic.begin(), magic.end(), std::begin(kMagic))) {
        throw FormatError("not an index file (bad magic)");
    }
    const auto version = r.get<std::uint32_t>();
    if (version != kIndexFormatVersion) {
        throw FormatError("unsupported index format version " + std::to_string(version));
    }
    if (bytes.size() < 4 + 4) throw FormatError("index file truncated");
    const auto body = bytes.first(bytes.size() - 4);
    std::uint32_t stored_crc;
    std::memcpy(&stored_crc, bytes.data() + body.size(), 4);
    if (crc32_of(body) != stored_crc) throw FormatError("index checksum mismatch");
    Reader in(body);
    in.get_bytes(8);

    const auto flags = in.get<std::uint32_t>();
    BuildParams params;
    const auto algorithm = flags & kAlgorithmMask;
    if (algorithm > 1 || (flags & ~(kAlgorithmMask | kShuffledOrderFlag)) != 0) {
        throw FormatError("unknown flags in index header");
    }
    params.algorithm = static_cast<BuildAlgorithm>(algorithm);
    params.order = (flags & kShuffledOrderFlag) != 0 ? VertexOrder::shuffled : VertexOrder::ascending;
    params.k = in.get<std::uint32_t>();
    const auto n = in.get<std::uint32_t>();
    const auto m = in.get<std::uint64_t>();
    params.h = in.get<std::uint32_t>();
    params.seed = in.get<std::uint64_t>();
    params.batch_size = 0;
    params.threads = 1;
    if (m >= std::numeric_limits<EdgeId>::max()) throw FormatError("edge count out of range");
    // Every stored vertex costs at least 8 bytes and every edge 24.
    if (n > in.remaining() / 8 || m > in.remaining() / 24) throw FormatError("index file truncated");

    std::vector<std::string> labels(n);
    for (auto& label : labels) {
        const auto len = in.get<std::uint32_t>();
        const auto raw = in.get_bytes(len);
        label.assign(reinterpret_cast<const char*>(raw.data()), raw.size());
    }
    std::vector<std::uint32_t> f(n);
    for (auto& x : f) x = in.get<std::uint32_t>();

    std::vector<RawEdge> raw(m);
    Time previous = 0;
    for (auto& e : raw) {
        e.tail = in.get<std::uint32_t>();
        e.head = in.get<std::uint32_t>();
        const auto t = in.get<std::uint64_t>();
        const auto lambda = in.get<std::uint64_t>();
        if (t > static_cast<std::uint64_t>(kInfinity) || lambda > static_cast<std::uint64_t>(kInfinity)) {
            throw FormatError("time value out of range");
        }
        e.time = static_cast<Time>(t);
        e.transition = static_cast<Time>(lambda);
        if (e.time < previous) throw FormatError("edge table is not in stream order");
        previous = e.time;
    }

    std::vector<Substream> substreams(params.k);
    for (auto& s : substreams) {
        const auto size = in.get<std::uint64_t>();
        if (size > in.remaining() / 8) throw FormatError("index file truncated");
        s.resize(size);
        for (auto& id : s) {
            const auto x = in.get<std::uint64_t>();
            if (x >= m) throw FormatError("substream references unknown edge");
            id = static_cast<EdgeId>(x);
        }
    }
    std::vector<SkipArray> skips(params.k);
    for (auto& skip : skips) {
        const auto count = in.get<std::uint64_t>();
        if (count > in.remaining() / 12) throw FormatError("index file truncated");
        std::vector<SkipArray::Entry> entries(count);
        for (auto& entry : entries) {
            entry.vertex = in.get<std::uint32_t>();
            entry.position = in.get<std::uint64_t>();
        }
        try {
            skip = SkipArray::from_entries(std::move(entries));
        } catch (const ValidationError& e) {
            throw FormatError(e.what());
        }
    }
    if (in.remaining() != 0) throw FormatError("trailing bytes in index file");

    try {
        auto stream = std::make_shared<const EdgeStream>(EdgeStream::from_edges(std::move(labels), std::move(raw)));
        SubstreamIndex index(std::move(stream), params, std::move(substreams), std::move(f));
        for (std::uint32_t i = 1; i <= params.k; ++i) {
            if (!(index.part(i).skip == skips[i - 1])) {
                throw FormatError("skip array of substream " + std::to_string(i) + " does not match");
            }
        }
        return index;
    } catch (const ValidationError& e) {
        throw FormatError(std::string("invalid index contents: ") + e.what());
    }
}

void save_index(const SubstreamIndex& index, const std::string& path) {
    const auto bytes = serialize(index);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + path + "'");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error("write failed for '" + path + "'");
}

SubstreamIndex load_index(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return deserialize(bytes);
}

}  // namespace tgi
