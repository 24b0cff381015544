#include "divsearch/persistence.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

namespace divsearch {

namespace {

constexpr std::array<char, 8> kIndexMagic = {'D', 'S', 'R', 'C', 'H', 'I', 'D', 'X'};
constexpr std::array<char, 8> kModelMagic = {'D', 'S', 'R', 'C', 'H', 'M', 'D', 'L'};

std::uint64_t fnv1a(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (char c : bytes) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    return h;
}

class Writer {
public:
    void raw(std::string_view s) { buf_.append(s); }
    void u32(std::uint32_t v) { le(v, 4); }
    void u64(std::uint64_t v) { le(v, 8); }
    void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
    void str(std::string_view s) {
        u32(static_cast<std::uint32_t>(s.size()));
        raw(s);
    }

    void finish(std::ostream& out) {
        u64(fnv1a(buf_));
        out.write(buf_.data(), static_cast<std::streamsize>(buf_.size()));
        if (!out) throw Error(ErrorKind::Io, "failed to write artifact");
    }

private:
    void le(std::uint64_t v, int bytes) {
        for (int i = 0; i < bytes; ++i) buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
    }
    std::string buf_;
};

class Reader {
public:
    explicit Reader(std::string bytes) : buf_(std::move(bytes)) {}

    std::string_view raw(std::size_t n) {
        need(n);
        std::string_view v(buf_.data() + pos_, n);
        pos_ += n;
        return v;
    }
    std::uint32_t u32() { return static_cast<std::uint32_t>(le(4)); }
    std::uint64_t u64() { return le(8); }
    double f64() { return std::bit_cast<double>(u64()); }
    std::string str() { return std::string(raw(u32())); }

    /// Element count about to be read, bounded by what is left in the buffer.
    std::size_t count(std::size_t min_bytes_each) {
        const std::uint64_t n = u64();
        if (min_bytes_each > 0 && n > (buf_.size() - pos_) / min_bytes_each)
            throw Error(ErrorKind::Format, "artifact is truncated or corrupted");
        return static_cast<std::size_t>(n);
    }

    void check_trailer() {
        if (buf_.size() < pos_ + 8) throw Error(ErrorKind::Format, "artifact is truncated");
        const std::string_view body(buf_.data(), buf_.size() - 8);
        std::uint64_t stored = 0;
        for (int i = 0; i < 8; ++i)
            stored |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf_[buf_.size() - 8 + i])) << (8 * i);
        if (stored != fnv1a(body)) throw Error(ErrorKind::Format, "artifact is truncated or corrupted");
        end_ = buf_.size() - 8;
    }

    void expect_end() const {
        if (pos_ != end_) throw Error(ErrorKind::Format, "trailing bytes in artifact");
    }

private:
    void need(std::size_t n) const {
        if (n > end_ - pos_) throw Error(ErrorKind::Format, "artifact is truncated or corrupted");
    }
    std::uint64_t le(int bytes) {
        auto s = raw(static_cast<std::size_t>(bytes));
        std::uint64_t v = 0;
        for (int i = 0; i < bytes; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(s[static_cast<std::size_t>(i)])) << (8 * i);
        return v;
    }

    std::string buf_;
    std::size_t pos_ = 0;
    std::size_t end_ = buf_.size();
};

std::string slurp(std::istream& in) {
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

// Magic, version and corpus identity, shared by both artifact kinds.
void read_preamble(Reader& r, const std::array<char, 8>& magic, std::uint32_t version,
                   const Corpus& corpus, const char* what) {
    if (r.raw(magic.size()) != std::string_view(magic.data(), magic.size()))
        throw Error(ErrorKind::Format, std::string("not a ") + what + " file");
    const auto found = r.u32();
    if (found != version)
        throw Error(ErrorKind::VersionMismatch, std::string(what) + " format version " + std::to_string(found) +
                                                   " is not supported (expected " + std::to_string(version) + ")");
    r.check_trailer();
    const auto checksum = r.u64();
    const auto size = r.u64();
    if (checksum != corpus.checksum() || size != corpus.size())
        throw Error(ErrorKind::StaleArtifact, std::string(what) + " was built for a different corpus");
}

void write_preamble(Writer& w, const std::array<char, 8>& magic, std::uint32_t version, const Corpus& corpus) {
    w.raw(std::string_view(magic.data(), magic.size()));
    w.u32(version);
    w.u64(corpus.checksum());
    w.u64(corpus.size());
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
    return in;
}

}  // namespace

void write_index(const InvertedIndex& index, std::ostream& out) {
    Writer w;
    write_preamble(w, kIndexMagic, kIndexFormatVersion, index.corpus());
    w.u32(static_cast<std::uint32_t>(index.gram_len()));
    w.u64(index.postings().size());
    for (const auto& [gram, list] : index.postings()) {
        w.str(gram);
        w.u64(list.size());
        for (const auto& p : list) {
            w.u32(p.id);
            w.u32(p.count);
        }
    }
    w.finish(out);
}

InvertedIndex read_index(std::istream& in, const Corpus& corpus) {
    Reader r(slurp(in));
    read_preamble(r, kIndexMagic, kIndexFormatVersion, corpus, "index");
    const std::size_t gram_len = r.u32();
    if (gram_len == 0) throw Error(ErrorKind::Format, "index has gram length 0");
    InvertedIndex::PostingMap postings;
    const auto grams = r.count(4 + 8);
    for (std::size_t g = 0; g < grams; ++g) {
        auto gram = r.str();
        const auto n = r.count(8);
        std::vector<Posting> list;
        list.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            Posting p{r.u32(), r.u32()};
            if (p.id >= corpus.size() || (!list.empty() && p.id <= list.back().id) || p.count == 0)
                throw Error(ErrorKind::Format, "malformed posting list for gram '" + gram + "'");
            list.push_back(p);
        }
        postings.emplace(std::move(gram), std::move(list));
    }
    r.expect_end();
    return InvertedIndex(corpus, gram_len, std::move(postings));
}

void save_index(const InvertedIndex& index, const std::filesystem::path& path) {
    auto out = open_out(path);
    write_index(index, out);
}

InvertedIndex load_index(const std::filesystem::path& path, const Corpus& corpus) {
    auto in = open_in(path);
    return read_index(in, corpus);
}

void write_model(const ClusterModel& model, const Corpus& corpus, std::ostream& out) {
    Writer w;
    write_preamble(w, kModelMagic, kModelFormatVersion, corpus);
    w.u64(model.config.dims);
    w.u64(model.config.clusters);
    w.u64(model.config.seed);
    w.f64(model.config.sample_rate);
    w.u64(model.config.max_iters);
    w.u64(model.kmeans_iterations);

    w.u64(model.vocabulary.dims());
    for (const auto& b : model.vocabulary.bigrams()) w.raw(b);

    w.u64(static_cast<std::uint64_t>(model.centroids.rows()));
    w.u64(static_cast<std::uint64_t>(model.centroids.cols()));
    for (Eigen::Index i = 0; i < model.centroids.rows(); ++i)
        for (Eigen::Index j = 0; j < model.centroids.cols(); ++j) w.f64(model.centroids(i, j));

    w.u64(model.members.size());
    for (const auto& m : model.members) {
        w.u64(m.size());
        for (RecordId id : m) w.u32(id);
    }
    for (RecordId id : model.medoids) w.u32(id);
    for (Eigen::Index i = 0; i < model.centroid_distances.rows(); ++i)
        for (Eigen::Index j = 0; j < model.centroid_distances.cols(); ++j) w.f64(model.centroid_distances(i, j));

    w.u64(model.training_sample.size());
    for (const auto& s : model.training_sample) {
        w.u32(s.id);
        w.u32(s.label);
    }
    w.finish(out);
}

ClusterModel read_model(std::istream& in, const Corpus& corpus) {
    Reader r(slurp(in));
    read_preamble(r, kModelMagic, kModelFormatVersion, corpus, "cluster model");
    ClusterModel model;
    model.config.dims = r.u64();
    model.config.clusters = r.u64();
    model.config.seed = r.u64();
    model.config.sample_rate = r.f64();
    model.config.max_iters = r.u64();
    model.kmeans_iterations = r.u64();

    std::vector<std::string> bigrams(r.count(2));
    for (auto& b : bigrams) b = std::string(r.raw(2));
    model.vocabulary = BigramVocabulary(std::move(bigrams));

    const auto rows = r.count(0);
    const auto cols = r.count(0);
    if (cols != model.vocabulary.dims() || rows > corpus.size())
        throw Error(ErrorKind::Format, "centroid shape does not match the vocabulary");
    model.centroids.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index i = 0; i < model.centroids.rows(); ++i)
        for (Eigen::Index j = 0; j < model.centroids.cols(); ++j) model.centroids(i, j) = r.f64();

    const auto m = r.count(8);
    if (m != rows) throw Error(ErrorKind::Format, "cluster count does not match centroids");
    model.members.resize(m);
    std::size_t covered = 0;
    for (auto& members : model.members) {
        members.resize(r.count(4));
        for (auto& id : members) id = r.u32();
        covered += members.size();
    }
    if (covered != corpus.size()) throw Error(ErrorKind::Format, "clusters do not partition the corpus");
    model.medoids.resize(m);
    for (auto& id : model.medoids) id = r.u32();
    model.centroid_distances.resize(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    for (Eigen::Index i = 0; i < model.centroid_distances.rows(); ++i)
        for (Eigen::Index j = 0; j < model.centroid_distances.cols(); ++j) model.centroid_distances(i, j) = r.f64();

    model.training_sample.resize(r.count(8));
    for (auto& s : model.training_sample) {
        s.id = r.u32();
        s.label = r.u32();
        if (s.id >= corpus.size() || s.label >= m) throw Error(ErrorKind::Format, "training sample out of range");
    }
    r.expect_end();
    rehydrate_cluster_model(model, corpus);
    return model;
}

void save_model(const ClusterModel& model, const Corpus& corpus, const std::filesystem::path& path) {
    auto out = open_out(path);
    write_model(model, corpus, out);
}

ClusterModel load_model(const std::filesystem::path& path, const Corpus& corpus) {
    auto in = open_in(path);
    return read_model(in, corpus);
}

}  // namespace divsearch
