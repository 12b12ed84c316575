#include "matls/bench/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace matls::bench {

namespace {

constexpr const char* kDatasetHeader = "k,slot,i,j,value";
constexpr const char* kCheckpointMagic = "matls-checkpoint 1";

std::string form_name(UpdateForm form) {
    return form == UpdateForm::Information ? "information" : "covariance";
}

UpdateForm parse_form(const std::string& name) {
    if (name == "information") {
        return UpdateForm::Information;
    }
    if (name == "covariance") {
        return UpdateForm::Covariance;
    }
    throw CheckpointError(CheckpointError::Kind::Parse, "checkpoint: unknown form '" + name + "'");
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "' for reading");
    }
    return in;
}

void write_matrix(std::ofstream& out, const Mat& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            out << (j == 0 ? "" : " ") << format_double(m(i, j));
        }
        out << '\n';
    }
}

class CheckpointReader {
public:
    explicit CheckpointReader(const std::string& path) : in_(open_in(path)), path_(path) {}

    std::string line() {
        std::string text;
        if (!std::getline(in_, text)) {
            throw CheckpointError(CheckpointError::Kind::Parse, path_ + ": unexpected end of file");
        }
        return text;
    }

    /// Reads "key value..." and returns the value tokens; the key must match.
    std::vector<std::string> keyed(const std::string& key) {
        std::istringstream tokens(line());
        std::string found;
        tokens >> found;
        if (found != key) {
            throw CheckpointError(CheckpointError::Kind::Parse,
                                  path_ + ": expected '" + key + "', found '" + found + "'");
        }
        std::vector<std::string> values;
        std::string value;
        while (tokens >> value) {
            values.push_back(value);
        }
        return values;
    }

    std::size_t keyed_count(const std::string& key) {
        const auto values = keyed(key);
        if (values.size() != 1) {
            throw CheckpointError(CheckpointError::Kind::Parse, path_ + ": '" + key + "' needs one value");
        }
        return parse_count(values.front());
    }

    std::size_t parse_count(const std::string& token) const {
        try {
            return static_cast<std::size_t>(std::stoull(token));
        } catch (const std::exception&) {
            throw CheckpointError(CheckpointError::Kind::Parse, path_ + ": bad count '" + token + "'");
        }
    }

    Mat matrix(std::size_t rows, std::size_t cols) {
        std::vector<double> entries;
        entries.reserve(rows * cols);
        for (std::size_t i = 0; i < rows; ++i) {
            std::istringstream row(line());
            double v = 0.0;
            while (row >> v) {
                entries.push_back(v);
            }
        }
        if (entries.size() != rows * cols) {
            throw CheckpointError(CheckpointError::Kind::Parse, path_ + ": matrix entry count mismatch");
        }
        return Mat(rows, cols, std::move(entries));
    }

private:
    std::ifstream in_;
    std::string path_;
};

struct CheckpointHead {
    UpdateForm form;
    ProblemDims dims;
    std::size_t step;
};

CheckpointHead read_head(CheckpointReader& reader, const std::string& path, const std::string& want_method) {
    if (reader.line() != kCheckpointMagic) {
        throw CheckpointError(CheckpointError::Kind::BadHeader, path + ": not a matls checkpoint");
    }
    const auto method = reader.keyed("method");
    if (method.size() != 1) {
        throw CheckpointError(CheckpointError::Kind::Parse, path + ": bad method line");
    }
    if (method.front() != want_method) {
        throw CheckpointError(CheckpointError::Kind::TagMismatch,
                              path + ": checkpoint method is '" + method.front() + "', expected '" +
                                  want_method + "'");
    }
    const auto form_tokens = reader.keyed("form");
    if (form_tokens.size() != 1) {
        throw CheckpointError(CheckpointError::Kind::Parse, path + ": bad form line");
    }
    CheckpointHead head{parse_form(form_tokens.front()),
                        ProblemDims{reader.keyed_count("p"), reader.keyed_count("n"), reader.keyed_count("m")},
                        reader.keyed_count("step")};
    return head;
}

void write_head(std::ofstream& out, const std::string& method, UpdateForm form, const ProblemDims& dims,
                std::size_t step) {
    out << kCheckpointMagic << '\n';
    out << "method " << method << '\n';
    out << "form " << form_name(form) << '\n';
    out << "p " << dims.p << '\n';
    out << "n " << dims.n << '\n';
    out << "m " << dims.m << '\n';
    out << "step " << step << '\n';
}

}  // namespace

std::string format_double(double v) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", v);
    return buffer;
}

void dataset_write(const std::string& path, std::span<const Measurement> data) {
    std::ofstream out = open_out(path);
    out << kDatasetHeader << '\n';
    for (std::size_t k = 0; k < data.size(); ++k) {
        const auto emit = [&](const char* slot, const Mat& m) {
            for (std::size_t i = 0; i < m.rows(); ++i) {
                for (std::size_t j = 0; j < m.cols(); ++j) {
                    out << k << ',' << slot << ',' << i << ',' << j << ',' << format_double(m(i, j))
                        << '\n';
                }
            }
        };
        emit("phi", data[k].phi);
        emit("y", data[k].y);
    }
    if (!out) {
        throw std::runtime_error("failed writing dataset to '" + path + "'");
    }
}

std::vector<Measurement> dataset_read(const std::string& path) {
    std::ifstream in = open_in(path);
    std::string line;
    std::size_t line_no = 1;
    if (!std::getline(in, line) || line != kDatasetHeader) {
        throw DatasetError(path + ": line 1: missing header '" + std::string(kDatasetHeader) + "'");
    }

    struct Slot {
        std::size_t rows = 0;
        std::size_t cols = 0;
        std::vector<std::pair<std::pair<std::size_t, std::size_t>, double>> cells;
    };
    struct Record {
        Slot phi;
        Slot y;
    };
    std::vector<Record> records;

    const auto fail = [&](const std::string& what) {
        throw DatasetError(path + ": line " + std::to_string(line_no) + ": " + what);
    };

    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        std::istringstream fields(line);
        std::string k_str, slot_str, i_str, j_str, v_str;
        if (!std::getline(fields, k_str, ',') || !std::getline(fields, slot_str, ',') ||
            !std::getline(fields, i_str, ',') || !std::getline(fields, j_str, ',') ||
            !std::getline(fields, v_str)) {
            fail("expected 5 comma-separated fields");
        }
        std::size_t k = 0, i = 0, j = 0;
        double v = 0.0;
        try {
            k = std::stoull(k_str);
            i = std::stoull(i_str);
            j = std::stoull(j_str);
            std::size_t consumed = 0;
            v = std::stod(v_str, &consumed);
            if (consumed != v_str.size()) {
                fail("trailing characters after value");
            }
        } catch (const DatasetError&) {
            throw;
        } catch (const std::exception&) {
            fail("unparseable numeric field");
        }
        if (slot_str != "phi" && slot_str != "y") {
            fail("slot must be 'phi' or 'y', got '" + slot_str + "'");
        }
        if (k >= records.size()) {
            records.resize(k + 1);
        }
        Slot& slot = slot_str == "phi" ? records[k].phi : records[k].y;
        slot.rows = std::max(slot.rows, i + 1);
        slot.cols = std::max(slot.cols, j + 1);
        slot.cells.push_back({{i, j}, v});
    }

    std::vector<Measurement> data;
    data.reserve(records.size());
    for (std::size_t k = 0; k < records.size(); ++k) {
        const auto build = [&](const Slot& slot, const char* name) {
            if (slot.rows == 0 || slot.cols == 0) {
                throw DatasetError(path + ": measurement " + std::to_string(k) + " is missing its '" +
                                   name + "' entries");
            }
            if (slot.cells.size() != slot.rows * slot.cols) {
                throw DatasetError(path + ": measurement " + std::to_string(k) + " slot '" + name +
                                   "' has " + std::to_string(slot.cells.size()) + " entries, expected " +
                                   std::to_string(slot.rows * slot.cols));
            }
            Mat m(slot.rows, slot.cols);
            for (const auto& [index, value] : slot.cells) {
                m(index.first, index.second) = value;
            }
            return m;
        };
        data.emplace_back(build(records[k].phi, "phi"), build(records[k].y, "y"));
    }
    return data;
}

void checkpoint_save(const std::string& path, const VecPermState& state) {
    std::ofstream out = open_out(path);
    write_head(out, "vec_perm", state.form(), state.dims(), state.step());
    out << "core " << state.core().dim() << '\n';
    write_matrix(out, state.core().matrix());
    out << "theta " << state.theta_bar().rows() << " 1\n";
    write_matrix(out, state.theta_bar());
    out << "end\n";
}

void checkpoint_save(const std::string& path, const ColumnwiseState& state) {
    std::ofstream out = open_out(path);
    write_head(out, "columnwise", state.form(), state.dims(), state.step());
    for (std::size_t j = 0; j < state.dims().m; ++j) {
        out << "core " << state.cores()[j].dim() << '\n';
        write_matrix(out, state.cores()[j].matrix());
        out << "theta " << state.columns()[j].rows() << " 1\n";
        write_matrix(out, state.columns()[j]);
    }
    out << "end\n";
}

void checkpoint_save(const std::string& path, const MatrixUpdateState& state) {
    std::ofstream out = open_out(path);
    write_head(out, "matrix", state.form(), state.dims(), state.step());
    out << "core " << state.core().dim() << '\n';
    write_matrix(out, state.core().matrix());
    out << "theta " << state.estimate().rows() << ' ' << state.estimate().cols() << '\n';
    write_matrix(out, state.estimate());
    out << "end\n";
}

VecPermState checkpoint_load_vec_perm(const std::string& path) {
    CheckpointReader reader(path);
    const CheckpointHead head = read_head(reader, path, "vec_perm");
    const std::size_t mn = head.dims.n * head.dims.m;
    const std::size_t core_dim = reader.keyed_count("core");
    if (core_dim != mn) {
        throw CheckpointError(CheckpointError::Kind::DimMismatch,
                              path + ": core dim " + std::to_string(core_dim) + " does not match mn=" +
                                  std::to_string(mn));
    }
    SpdMat core = SpdMat(reader.matrix(core_dim, core_dim));
    const auto theta_dims = reader.keyed("theta");
    if (theta_dims.size() != 2) {
        throw CheckpointError(CheckpointError::Kind::Parse, path + ": bad theta line");
    }
    Mat theta = reader.matrix(reader.parse_count(theta_dims[0]), reader.parse_count(theta_dims[1]));
    if (theta.rows() != mn || theta.cols() != 1) {
        throw CheckpointError(CheckpointError::Kind::DimMismatch, path + ": theta must be mn x 1");
    }
    return VecPermState::restore(head.dims, head.form, std::move(core), std::move(theta), head.step);
}

ColumnwiseState checkpoint_load_columnwise(const std::string& path) {
    CheckpointReader reader(path);
    const CheckpointHead head = read_head(reader, path, "columnwise");
    std::vector<SpdMat> cores;
    std::vector<Mat> cols;
    for (std::size_t j = 0; j < head.dims.m; ++j) {
        const std::size_t core_dim = reader.keyed_count("core");
        if (core_dim != head.dims.n) {
            throw CheckpointError(CheckpointError::Kind::DimMismatch,
                                  path + ": column core dim does not match n");
        }
        cores.push_back(SpdMat(reader.matrix(core_dim, core_dim)));
        const auto theta_dims = reader.keyed("theta");
        if (theta_dims.size() != 2) {
            throw CheckpointError(CheckpointError::Kind::Parse, path + ": bad theta line");
        }
        Mat col = reader.matrix(reader.parse_count(theta_dims[0]), reader.parse_count(theta_dims[1]));
        if (col.rows() != head.dims.n || col.cols() != 1) {
            throw CheckpointError(CheckpointError::Kind::DimMismatch, path + ": theta column must be n x 1");
        }
        cols.push_back(std::move(col));
    }
    return ColumnwiseState::restore(head.dims, head.form, std::move(cores), std::move(cols), head.step);
}

MatrixUpdateState checkpoint_load_matrix(const std::string& path) {
    CheckpointReader reader(path);
    const CheckpointHead head = read_head(reader, path, "matrix");
    const std::size_t core_dim = reader.keyed_count("core");
    if (core_dim != head.dims.n) {
        throw CheckpointError(CheckpointError::Kind::DimMismatch, path + ": core dim does not match n");
    }
    SpdMat core = SpdMat(reader.matrix(core_dim, core_dim));
    const auto theta_dims = reader.keyed("theta");
    if (theta_dims.size() != 2) {
        throw CheckpointError(CheckpointError::Kind::Parse, path + ": bad theta line");
    }
    Mat theta = reader.matrix(reader.parse_count(theta_dims[0]), reader.parse_count(theta_dims[1]));
    if (theta.rows() != head.dims.n || theta.cols() != head.dims.m) {
        throw CheckpointError(CheckpointError::Kind::DimMismatch, path + ": theta must be n x m");
    }
    return MatrixUpdateState::restore(head.dims, head.form, std::move(core), std::move(theta), head.step);
}

std::string checkpoint_method(const std::string& path) {
    CheckpointReader reader(path);
    if (reader.line() != kCheckpointMagic) {
        throw CheckpointError(CheckpointError::Kind::BadHeader, path + ": not a matls checkpoint");
    }
    const auto method = reader.keyed("method");
    if (method.size() != 1) {
        throw CheckpointError(CheckpointError::Kind::Parse, path + ": bad method line");
    }
    return method.front();
}

}  // namespace matls::bench
