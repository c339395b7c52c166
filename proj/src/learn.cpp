#include "fastfood/learn.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "fastfood/errors.hpp"
#include "fastfood/sampling.hpp"
#include "fastfood/special.hpp"

namespace fastfood {

Matrix featurize_rows(const FeatureMap& map, const Matrix& x) {
    Matrix phi(x.rows, map.feature_dim());
    #pragma omp parallel for schedule(dynamic, 16)
    for (long i = 0; i < static_cast<long>(x.rows); ++i) {
        auto f = map.features(x.row_span(i));
        for (size_t j = 0; j < f.size(); ++j) phi.at(i, j) = f[j];
    }
    return phi;
}

namespace {

std::vector<std::string> split_fields(const std::string& line, bool comma) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        bool sep = comma ? (ch == ',') : std::isspace(static_cast<unsigned char>(ch));
        if (sep) {
            if (comma || !cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (comma || !cur.empty()) out.push_back(cur);
    if (comma)  // trim surrounding whitespace of comma fields
        for (auto& f : out) {
            size_t b = f.find_first_not_of(" \t\r");
            size_t e = f.find_last_not_of(" \t\r");
            f = (b == std::string::npos) ? "" : f.substr(b, e - b + 1);
        }
    return out;
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    const char* begin = s.data();
    const char* end = begin + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end;
}

}  // namespace

namespace {

struct RawTable {
    std::vector<std::string> header;  // empty when the file has none
    std::vector<std::string> lines;   // data lines only
    bool comma = false;
    size_t first_row_number = 1;      // 1-based line number of the first data row
    size_t ncols = 0;
};

RawTable read_raw_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error("load_table: cannot open " + path);

    RawTable raw;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') continue;
        raw.lines.push_back(line);
    }
    if (raw.lines.empty()) throw data_error("load_table: no data rows in " + path);

    raw.comma = raw.lines[0].find(',') != std::string::npos;
    auto first = split_fields(raw.lines[0], raw.comma);
    if (first.empty()) throw data_error("load_table: empty first row in " + path);

    // header detection: any non-numeric field in the first row
    bool has_header = false;
    for (const auto& f : first) {
        double v;
        if (!parse_double(f, v)) {
            has_header = true;
            break;
        }
    }
    if (has_header) {
        raw.header = first;
        raw.lines.erase(raw.lines.begin());
        raw.first_row_number = 2;
        if (raw.lines.empty()) throw data_error("load_table: header but no data rows");
    }
    raw.ncols = has_header ? raw.header.size()
                           : split_fields(raw.lines[0], raw.comma).size();
    return raw;
}

void parse_row(const RawTable& raw, size_t r, std::span<double> out) {
    auto fields = split_fields(raw.lines[r], raw.comma);
    if (fields.size() != raw.ncols) {
        std::ostringstream msg;
        msg << "load_table: row " << (raw.first_row_number + r) << " has "
            << fields.size() << " fields, expected " << raw.ncols;
        throw data_error(msg.str());
    }
    for (size_t j = 0; j < raw.ncols; ++j) {
        if (!parse_double(fields[j], out[j])) {
            std::ostringstream msg;
            msg << "load_table: non-numeric cell at row " << (raw.first_row_number + r)
                << ", column " << (j + 1) << " ('" << fields[j] << "')";
            throw data_error(msg.str());
        }
    }
}

}  // namespace

Matrix load_matrix(const std::string& path) {
    RawTable raw = read_raw_table(path);
    Matrix x(raw.lines.size(), raw.ncols);
    for (size_t r = 0; r < raw.lines.size(); ++r)
        parse_row(raw, r, {x.row(r), raw.ncols});
    return x;
}

Dataset load_table(const std::string& path,
                   const std::optional<std::string>& target_column) {
    RawTable raw = read_raw_table(path);
    const bool has_header = !raw.header.empty();
    const auto& header = raw.header;
    const size_t ncols = raw.ncols;
    if (ncols < 2)
        throw data_error("load_table: need at least one feature and a target column");

    // resolve target column: 0-based index, or header name, default last
    size_t target = ncols - 1;
    if (target_column) {
        double idx;
        if (parse_double(*target_column, idx) && idx >= 0 &&
            idx == std::floor(idx) && static_cast<size_t>(idx) < ncols) {
            target = static_cast<size_t>(idx);
        } else if (has_header) {
            bool found = false;
            for (size_t j = 0; j < header.size(); ++j)
                if (header[j] == *target_column) {
                    target = j;
                    found = true;
                    break;
                }
            if (!found)
                throw data_error("load_table: target column '" + *target_column +
                                 "' not found");
        } else {
            throw data_error("load_table: target column '" + *target_column +
                             "' not found (file has no header)");
        }
    }

    const size_t m = raw.lines.size();
    Dataset ds;
    ds.x = Matrix(m, ncols - 1);
    ds.y.resize(m);
    std::vector<double> row(ncols);
    for (size_t r = 0; r < m; ++r) {
        parse_row(raw, r, row);
        size_t out_j = 0;
        for (size_t j = 0; j < ncols; ++j) {
            if (j == target)
                ds.y[r] = row[j];
            else
                ds.x.at(r, out_j++) = row[j];
        }
    }
    return ds;
}

void save_table(const Dataset& ds, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw data_error("save_table: cannot open " + path);
    char buf[40];
    for (size_t i = 0; i < ds.x.rows; ++i) {
        for (size_t j = 0; j < ds.x.cols; ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", ds.x.at(i, j));
            out << buf << ' ';
        }
        std::snprintf(buf, sizeof(buf), "%.17g", ds.y[i]);
        out << buf << '\n';
    }
    if (!out) throw data_error("save_table: write failed for " + path);
}

void standardize(Dataset& ds) {
    const size_t m = ds.x.rows, d = ds.x.cols;
    if (m < 1) throw std::invalid_argument("standardize: empty dataset");
    ds.feature_mean.assign(d, 0.0);
    ds.feature_std.assign(d, 1.0);
    for (size_t j = 0; j < d; ++j) {
        double s = 0.0;
        for (size_t i = 0; i < m; ++i) s += ds.x.at(i, j);
        ds.feature_mean[j] = s / static_cast<double>(m);
        double ss = 0.0;
        for (size_t i = 0; i < m; ++i) {
            double c = ds.x.at(i, j) - ds.feature_mean[j];
            ss += c * c;
        }
        double sd = std::sqrt(ss / static_cast<double>(m));
        ds.feature_std[j] = sd > 1e-12 ? sd : 1.0;  // constant column -> zeros
    }
    double s = 0.0;
    for (double v : ds.y) s += v;
    ds.target_mean = s / static_cast<double>(m);
    double ss = 0.0;
    for (double v : ds.y) ss += (v - ds.target_mean) * (v - ds.target_mean);
    double sd = std::sqrt(ss / static_cast<double>(m));
    ds.target_std = sd > 1e-12 ? sd : 1.0;

    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < d; ++j)
            ds.x.at(i, j) = (ds.x.at(i, j) - ds.feature_mean[j]) / ds.feature_std[j];
    for (auto& v : ds.y) v = (v - ds.target_mean) / ds.target_std;
}

void standardize_like(Dataset& ds, const Dataset& stats_source) {
    if (!stats_source.standardized())
        throw std::invalid_argument("standardize_like: source has no statistics");
    if (ds.x.cols != stats_source.feature_mean.size())
        throw std::invalid_argument("standardize_like: dimension mismatch");
    ds.feature_mean = stats_source.feature_mean;
    ds.feature_std = stats_source.feature_std;
    ds.target_mean = stats_source.target_mean;
    ds.target_std = stats_source.target_std;
    for (size_t i = 0; i < ds.x.rows; ++i)
        for (size_t j = 0; j < ds.x.cols; ++j)
            ds.x.at(i, j) = (ds.x.at(i, j) - ds.feature_mean[j]) / ds.feature_std[j];
    for (auto& v : ds.y) v = (v - ds.target_mean) / ds.target_std;
}

std::pair<Dataset, Dataset> train_test_split(const Dataset& ds, double train_fraction,
                                             SeedSpec seed) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw std::invalid_argument("train_test_split: fraction in (0,1)");
    const size_t m = ds.x.rows;
    auto perm = random_permutation(m, seed);
    const size_t m_train = static_cast<size_t>(std::round(train_fraction * m));
    if (m_train == 0 || m_train == m)
        throw std::invalid_argument("train_test_split: degenerate split");

    auto take = [&](size_t begin, size_t end) {
        Dataset out;
        out.x = Matrix(end - begin, ds.x.cols);
        out.y.resize(end - begin);
        for (size_t i = begin; i < end; ++i) {
            for (size_t j = 0; j < ds.x.cols; ++j)
                out.x.at(i - begin, j) = ds.x.at(perm[i], j);
            out.y[i - begin] = ds.y[perm[i]];
        }
        return out;
    };
    return {take(0, m_train), take(m_train, m)};
}

RidgeModel ridge_fit(const Matrix& phi, std::span<const double> y, double lambda,
                     const FeatureMap* map) {
    if (phi.rows != y.size()) throw std::invalid_argument("ridge_fit: size mismatch");
    if (lambda < 0.0) throw std::invalid_argument("ridge_fit: lambda >= 0");
    Matrix gram = gram_tt(phi);
    std::vector<double> rhs(phi.cols, 0.0);
    for (size_t i = 0; i < phi.rows; ++i) {
        const double* row = phi.row(i);
        const double yi = y[i];
        #pragma omp simd
        for (size_t j = 0; j < phi.cols; ++j) rhs[j] += row[j] * yi;
    }
    RidgeModel model;
    model.map = map;
    model.lambda = lambda;
    model.w = cholesky_solve(std::move(gram), rhs, lambda);
    return model;
}

double predict(const RidgeModel& model, std::span<const double> features) {
    if (features.size() != model.w.size())
        throw std::invalid_argument("predict: feature length mismatch");
    double acc = 0.0;
    for (size_t j = 0; j < features.size(); ++j) acc += model.w[j] * features[j];
    return acc;
}

double rmse(std::span<const double> preds, std::span<const double> y,
            double target_std) {
    if (preds.size() != y.size() || preds.empty())
        throw std::invalid_argument("rmse: length mismatch");
    double ss = 0.0;
    for (size_t i = 0; i < preds.size(); ++i) {
        double e = preds[i] - y[i];
        ss += e * e;
    }
    return std::sqrt(ss / static_cast<double>(preds.size())) * target_std;
}

KernelRidge kernel_ridge_fit(const Matrix& x, std::span<const double> y,
                             const KernelSpec& spec, double lambda) {
    if (x.rows != y.size()) throw std::invalid_argument("kernel_ridge_fit: size mismatch");
    validate_spec(spec);
    const size_t m = x.rows;
    Matrix k(m, m);
    #pragma omp parallel for schedule(dynamic, 16)
    for (long i = 0; i < static_cast<long>(m); ++i)
        for (size_t j = i; j < m; ++j) {
            double v = exact_kernel(spec, x.row_span(i), x.row_span(j));
            k.at(i, j) = v;
            k.at(j, i) = v;
        }
    KernelRidge model;
    model.train_x = x;
    model.spec = spec;
    model.lambda = lambda;
    model.alpha = cholesky_solve(std::move(k), y, lambda);
    return model;
}

double kernel_ridge_predict(const KernelRidge& model, std::span<const double> x) {
    double acc = 0.0;
    for (size_t i = 0; i < model.train_x.rows; ++i)
        acc += model.alpha[i] * exact_kernel(model.spec, model.train_x.row_span(i), x);
    return acc;
}

std::vector<double> kernel_ridge_predict_rows(const KernelRidge& model,
                                              const Matrix& x) {
    std::vector<double> out(x.rows);
    #pragma omp parallel for schedule(dynamic, 16)
    for (long i = 0; i < static_cast<long>(x.rows); ++i)
        out[i] = kernel_ridge_predict(model, x.row_span(i));
    return out;
}

Dataset synth_gp_data(size_t m, size_t d, double sigma, double noise, SeedSpec seed,
                      size_t n_centers) {
    if (m < 1 || m > 4000)
        throw std::invalid_argument("synth_gp_data: m in [1, 4000] (exact kernel scale)");
    if (d < 1 || n_centers < 1)
        throw std::invalid_argument("synth_gp_data: d >= 1, centers >= 1");
    if (!(sigma > 0.0) || noise < 0.0)
        throw std::invalid_argument("synth_gp_data: sigma > 0, noise >= 0");

    CounterRng rx(seed.substream(0));
    CounterRng rc(seed.substream(1));
    CounterRng ra(seed.substream(2));
    CounterRng rn(seed.substream(3));

    Matrix centers(n_centers, d);
    for (size_t c = 0; c < n_centers; ++c)
        for (size_t j = 0; j < d; ++j)
            centers.at(c, j) = rc.uniform_at(c * d + j);
    std::vector<double> amp(n_centers);
    for (size_t c = 0; c < n_centers; ++c)
        amp[c] = inv_normal_cdf(ra.uniform_at(c));

    Dataset ds;
    ds.x = Matrix(m, d);
    ds.y.resize(m);
    #pragma omp parallel for schedule(static)
    for (long i = 0; i < static_cast<long>(m); ++i) {
        for (size_t j = 0; j < d; ++j)
            ds.x.at(i, j) = rx.uniform_at(static_cast<uint64_t>(i) * d + j);
        double y = 0.0;
        for (size_t c = 0; c < n_centers; ++c)
            y += amp[c] * rbf_kernel(ds.x.row_span(i), centers.row_span(c), sigma);
        ds.y[i] = y + noise * inv_normal_cdf(rn.uniform_at(i));
    }
    return ds;
}

}  // namespace fastfood
