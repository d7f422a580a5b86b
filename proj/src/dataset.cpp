#include "nubs/dataset.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace nubs {

Dataset load_dataset(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw DatasetError(DatasetError::Kind::Unreadable,
                           "cannot open dataset file: " + path.string());

    Dataset ds;
    ds.name = path.stem().string();
    ds.source = Dataset::Source::File;

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);

        std::size_t pos = 0;
        while (pos < line.size()) {
            if (std::isspace(static_cast<unsigned char>(line[pos])) || line[pos] == ',') {
                ++pos;
                continue;
            }
            std::size_t end = pos;
            while (end < line.size() && !std::isspace(static_cast<unsigned char>(line[end])) &&
                   line[end] != ',')
                ++end;
            const std::string_view token(line.data() + pos, end - pos);

            double value = 0.0;
            const auto [ptr, ec] =
                std::from_chars(token.data(), token.data() + token.size(), value);
            if (ec != std::errc() || ptr != token.data() + token.size()) {
                std::ostringstream msg;
                msg << "non-numeric token '" << token << "' at line " << line_no
                    << ", column " << pos + 1;
                throw DatasetError(DatasetError::Kind::BadToken, msg.str(), line_no,
                                   static_cast<int>(pos + 1));
            }
            const int index = static_cast<int>(ds.values.size()) + 1;
            if (!(value > 0.0) || !std::isfinite(value)) {
                std::ostringstream msg;
                msg << "nonpositive value " << value << " at index " << index;
                throw DatasetError(DatasetError::Kind::NonPositive, msg.str(), line_no,
                                   static_cast<int>(pos + 1), index);
            }
            ds.values.push_back(value);
            pos = end;
        }
    }
    if (ds.values.empty())
        throw DatasetError(DatasetError::Kind::BadToken,
                           "dataset contains no values: " + path.string());
    return ds;
}

Dataset embedded_table1() {
    static const double kTable1[101] = {
        70,  90,  96,  97,  99,  100, 103, 104, 104, 105, 107, 108, 108, 108, 109,
        109, 112, 112, 113, 114, 114, 114, 116, 119, 120, 120, 120, 121, 121, 123,
        124, 124, 124, 124, 124, 128, 128, 129, 129, 130, 130, 130, 131, 131, 131,
        131, 131, 132, 132, 132, 133, 134, 134, 134, 134, 134, 136, 136, 137, 138,
        138, 138, 139, 139, 141, 141, 142, 142, 142, 142, 142, 142, 144, 144, 145,
        146, 148, 148, 149, 151, 151, 152, 155, 156, 157, 157, 157, 157, 158, 159,
        162, 163, 163, 164, 166, 166, 168, 170, 174, 196, 212};
    Dataset ds;
    ds.name = "table1";
    ds.source = Dataset::Source::Embedded;
    ds.values.assign(kTable1, kTable1 + 101);
    return ds;
}

}  // namespace nubs
