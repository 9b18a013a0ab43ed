#include "tsllsr/data_io.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <unordered_map>
#include <vector>

#include "text_util.hpp"

namespace tsllsr {

namespace {

using detail::fmt17;
using detail::parse_double;
using detail::parse_int;
using detail::trim;

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return out;
}

} // namespace

Dataset load_csv(const std::string& path, bool has_header) {
    std::ifstream file(path);
    if (!file) throw InputError("load_csv: cannot open '" + path + "'");

    std::vector<std::vector<double>> feature_rows;
    std::vector<long long> raw_labels;
    std::string line;
    std::size_t line_no = 0;
    std::size_t expected_cols = 0;

    while (std::getline(file, line)) {
        ++line_no;
        if (has_header && line_no == 1) continue;
        std::string_view stripped = trim(line);
        if (stripped.empty()) continue;

        auto fields = split_fields(stripped);
        if (expected_cols == 0) {
            expected_cols = fields.size();
            if (expected_cols < 2)
                throw InputError("load_csv: row " + std::to_string(line_no) +
                                 " needs at least one feature column plus a label");
        } else if (fields.size() != expected_cols) {
            throw InputError("load_csv: row " + std::to_string(line_no) + " has " +
                             std::to_string(fields.size()) + " columns, expected " +
                             std::to_string(expected_cols));
        }

        std::vector<double> features(expected_cols - 1);
        for (std::size_t col = 0; col + 1 < expected_cols; ++col) {
            if (!parse_double(trim(fields[col]), features[col]))
                throw InputError("load_csv: row " + std::to_string(line_no) + ", column " +
                                 std::to_string(col + 1) + ": cannot parse '" +
                                 std::string(trim(fields[col])) + "' as a number");
        }
        long long label = 0;
        if (!parse_int(trim(fields.back()), label) || label < 0)
            throw InputError("load_csv: row " + std::to_string(line_no) + ", column " +
                             std::to_string(expected_cols) +
                             ": label must be a nonnegative integer, got '" +
                             std::string(trim(fields.back())) + "'");
        feature_rows.push_back(std::move(features));
        raw_labels.push_back(label);
    }
    if (feature_rows.empty()) throw InputError("load_csv: '" + path + "' holds no data rows");

    // Remap labels to dense [0, c) in first-appearance order.
    std::unordered_map<long long, int> dense;
    std::vector<long long> label_values;
    std::vector<int> labels(raw_labels.size());
    for (std::size_t i = 0; i < raw_labels.size(); ++i) {
        auto [it, inserted] = dense.try_emplace(raw_labels[i], static_cast<int>(label_values.size()));
        if (inserted) label_values.push_back(raw_labels[i]);
        labels[i] = it->second;
    }

    Dataset ds;
    const Index d = static_cast<Index>(feature_rows.front().size());
    const Index n = static_cast<Index>(feature_rows.size());
    ds.samples = Matrix(d, n);
    for (Index j = 0; j < n; ++j)
        for (Index i = 0; i < d; ++i)
            ds.samples(i, j) = feature_rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    ds.labels = std::move(labels);
    ds.num_classes = static_cast<int>(label_values.size());
    ds.label_values = std::move(label_values);
    ds.validate();
    return ds;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Unbiased draw in [0, n); rejection keeps the stream portable.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % n;
}

Dataset take_subset(const Dataset& src, const std::vector<Index>& idx) {
    Dataset out;
    out.samples = Matrix(src.dim(), static_cast<Index>(idx.size()));
    out.labels.resize(idx.size());
    out.num_classes = src.num_classes;
    out.label_values = src.label_values;
    for (std::size_t j = 0; j < idx.size(); ++j) {
        for (Index i = 0; i < src.dim(); ++i) out.samples(i, static_cast<Index>(j)) = src.samples(i, idx[j]);
        out.labels[j] = src.labels[static_cast<std::size_t>(idx[j])];
    }
    return out;
}

} // namespace

std::pair<Dataset, Dataset> split(const Dataset& dataset, const SplitSpec& spec) {
    dataset.validate();
    if (spec.per_class_train < 1) throw InputError("split: per_class_train must be >= 1");

    std::vector<std::vector<Index>> by_class(static_cast<std::size_t>(dataset.num_classes));
    for (Index j = 0; j < dataset.count(); ++j)
        by_class[static_cast<std::size_t>(dataset.labels[static_cast<std::size_t>(j)])].push_back(j);

    std::vector<Index> train_idx, test_idx;
    for (int cls = 0; cls < dataset.num_classes; ++cls) {
        auto& members = by_class[static_cast<std::size_t>(cls)];
        if (static_cast<int>(members.size()) < spec.per_class_train)
            throw InputError("split: class " + std::to_string(cls) + " has only " +
                             std::to_string(members.size()) + " samples, need " +
                             std::to_string(spec.per_class_train));
        if (static_cast<int>(members.size()) == spec.per_class_train)
            std::cerr << "warning: class " << cls << " has no test samples\n";

        // Keyed per (seed, repeat, class) so one class's draw never disturbs
        // another's.
        std::uint64_t key = splitmix64(spec.seed ^ splitmix64(
                                static_cast<std::uint64_t>(spec.repeat_index) ^
                                splitmix64(static_cast<std::uint64_t>(cls))));
        std::mt19937_64 rng(key);
        for (std::size_t i = members.size() - 1; i > 0; --i)
            std::swap(members[i], members[bounded(rng, i + 1)]);

        std::vector<Index> picked(members.begin(), members.begin() + spec.per_class_train);
        std::vector<Index> rest(members.begin() + spec.per_class_train, members.end());
        std::sort(picked.begin(), picked.end());
        std::sort(rest.begin(), rest.end());
        train_idx.insert(train_idx.end(), picked.begin(), picked.end());
        test_idx.insert(test_idx.end(), rest.begin(), rest.end());
    }
    return {take_subset(dataset, train_idx), take_subset(dataset, test_idx)};
}

// ---------------------------------------------------------------------------
// Model persistence
// ---------------------------------------------------------------------------

namespace {

constexpr const char* kModelMagic = "TSLLSR-MODEL v1";

void write_matrix(std::ostream& out, const char* name, const Matrix& m) {
    out << name << ' ' << m.rows() << ' ' << m.cols() << '\n';
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            if (j) out << ' ';
            out << fmt17(m(i, j));
        }
        out << '\n';
    }
}

class ModelReader {
public:
    explicit ModelReader(std::istream& in) : in_(in) {}

    std::string next_line() {
        std::string line;
        if (!std::getline(in_, line))
            throw FormatError("model file: truncated (unexpected end of file)");
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return line;
    }

    bool peek_eof() {
        return in_.peek() == std::char_traits<char>::eof();
    }

    Matrix read_matrix(const std::string& header, const char* name) {
        std::istringstream hs(header);
        std::string tag;
        long long rows = -1, cols = -1;
        hs >> tag >> rows >> cols;
        if (tag != name || rows < 0 || cols < 0 || hs.fail())
            throw FormatError("model file: expected '" + std::string(name) +
                              " <rows> <cols>', got '" + header + "'");
        Matrix m(rows, cols);
        for (Index i = 0; i < m.rows(); ++i) {
            std::istringstream ls(next_line());
            std::string cell;
            for (Index j = 0; j < m.cols(); ++j) {
                if (!(ls >> cell) || !parse_double(cell, m(i, j)))
                    throw FormatError("model file: bad entry in " + std::string(name) + " row " +
                                      std::to_string(i));
            }
            if (ls >> cell)
                throw FormatError("model file: extra entries in " + std::string(name) + " row " +
                                  std::to_string(i));
        }
        return m;
    }

private:
    std::istream& in_;
};

} // namespace

void save_model(const Model& model, const std::string& path) {
    if (model.w.rows() != model.p || model.w.cols() != model.d || model.q.rows() != model.c ||
        model.q.cols() != model.p)
        throw InputError("save_model: model dimensions are inconsistent");
    std::ofstream out(path);
    if (!out) throw InputError("save_model: cannot open '" + path + "' for writing");

    const Hyperparams& hp = model.hyperparams;
    out << kModelMagic << '\n';
    out << "dims " << model.d << ' ' << model.p << ' ' << model.c << '\n';
    out << "hyperparams " << fmt17(hp.alpha) << ' ' << fmt17(hp.beta) << ' ' << fmt17(hp.lambda1)
        << ' ' << fmt17(hp.lambda2) << ' ' << hp.p << ' ' << fmt17(hp.mu0) << ' ' << fmt17(hp.rho)
        << ' ' << fmt17(hp.mu_max) << ' ' << fmt17(hp.tol) << ' ' << hp.max_iters << '\n';
    write_matrix(out, "W", model.w);
    write_matrix(out, "Q", model.q);
    if (model.has_train_features() && !model.train_labels.empty()) {
        write_matrix(out, "features", model.train_features);
        out << "labels " << model.train_labels.size() << '\n';
        for (std::size_t i = 0; i < model.train_labels.size(); ++i) {
            if (i) out << ' ';
            out << model.train_labels[i];
        }
        out << '\n';
    }
    out << "end\n";
    if (!out) throw InputError("save_model: write to '" + path + "' failed");
}

Model load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("load_model: cannot open '" + path + "'");
    ModelReader reader(in);

    if (reader.next_line() != kModelMagic)
        throw FormatError("model file: missing or unsupported version header");

    Model model;
    {
        std::istringstream ls(reader.next_line());
        std::string tag;
        long long d = -1, p = -1, c = -1;
        ls >> tag >> d >> p >> c;
        if (tag != "dims" || ls.fail() || d < 1 || p < 1 || c < 2)
            throw FormatError("model file: bad dims line");
        model.d = d;
        model.p = p;
        model.c = static_cast<int>(c);
    }
    {
        std::istringstream ls(reader.next_line());
        std::string tag, tok;
        ls >> tag;
        if (tag != "hyperparams") throw FormatError("model file: missing hyperparams line");
        Hyperparams hp;
        auto next_double = [&](double& v) {
            if (!(ls >> tok) || !parse_double(tok, v))
                throw FormatError("model file: bad hyperparams entry");
        };
        next_double(hp.alpha);
        next_double(hp.beta);
        next_double(hp.lambda1);
        next_double(hp.lambda2);
        long long p = -1;
        if (!(ls >> p)) throw FormatError("model file: bad hyperparams entry");
        hp.p = p;
        next_double(hp.mu0);
        next_double(hp.rho);
        next_double(hp.mu_max);
        next_double(hp.tol);
        if (!(ls >> hp.max_iters)) throw FormatError("model file: bad hyperparams entry");
        if (hp.p != model.p)
            throw FormatError("model file: hyperparams p disagrees with dims");
        model.hyperparams = hp;
    }

    model.w = reader.read_matrix(reader.next_line(), "W");
    model.q = reader.read_matrix(reader.next_line(), "Q");
    if (model.w.rows() != model.p || model.w.cols() != model.d)
        throw FormatError("model file: W dimensions disagree with dims");
    if (model.q.rows() != model.c || model.q.cols() != model.p)
        throw FormatError("model file: Q dimensions disagree with dims");

    std::string line = reader.next_line();
    if (line.rfind("features", 0) == 0) {
        model.train_features = reader.read_matrix(line, "features");
        if (model.train_features.rows() != model.c)
            throw FormatError("model file: features row count disagrees with class count");
        std::istringstream ls(reader.next_line());
        std::string tag;
        long long count = -1;
        ls >> tag >> count;
        if (tag != "labels" || ls.fail() || count != model.train_features.cols())
            throw FormatError("model file: labels line disagrees with features");
        std::istringstream vs(reader.next_line());
        model.train_labels.resize(static_cast<std::size_t>(count));
        for (auto& lab : model.train_labels) {
            if (!(vs >> lab) || lab < 0 || lab >= model.c)
                throw FormatError("model file: bad label entry");
        }
        line = reader.next_line();
    }
    if (line != "end") throw FormatError("model file: truncated (missing end marker)");

    if (!all_finite(model.w) || !all_finite(model.q) || !all_finite(model.train_features))
        throw FormatError("model file: non-finite matrix entry");
    return model;
}

} // namespace tsllsr
