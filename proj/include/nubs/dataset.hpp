#ifndef NUBS_DATASET_HPP
#define NUBS_DATASET_HPP

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace nubs {

/// Error raised by dataset ingestion, with enough position information to
/// point at the offending token.
class DatasetError : public std::runtime_error {
  public:
    enum class Kind { Unreadable, BadToken, NonPositive };

    DatasetError(Kind kind, const std::string& message, int line = 0, int column = 0,
                 int index = 0)
        : std::runtime_error(message), kind(kind), line(line), column(column), index(index) {}

    Kind kind;
    int line;    // 1-based source line (BadToken)
    int column;  // 1-based source column (BadToken)
    int index;   // 1-based value index (NonPositive)
};

/// An ordered sample of strictly positive lifetimes.
struct Dataset {
    enum class Source { File, Embedded };

    std::string name;
    std::vector<double> values;
    Source source = Source::File;
};

/// Reads whitespace- or comma-separated positive reals; '#' starts a
/// comment running to end of line. Order and count are preserved exactly.
/// Throws DatasetError with Kind::Unreadable, Kind::BadToken (line/column)
/// or Kind::NonPositive (value index).
Dataset load_dataset(const std::filesystem::path& path);

/// The classic aluminum-coupon fatigue dataset (Birnbaum & Saunders, 1969):
/// cycles x 10^-3 to failure of 101 6061-T6 specimens at 31,000 psi
/// maximum stress, in table order.
Dataset embedded_table1();

}  // namespace nubs

#endif
