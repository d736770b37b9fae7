/* Copyright 2026 kernelweave contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "kernelweave/buffer_csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace kernelweave {

namespace {

// 17 significant digits uniquely identify a double, so parse-then-reprint is
// the identity on the text as well as the value.
std::string formatFull(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

void writeBufferCsv(const Buffer& buf, std::ostream& os)
{
    if (buf.dim() != 2)
        throw UsageError("writeBufferCsv: only 2-D buffers are supported");
    if (buf.elemSize() != sizeof(double))
        throw UsageError("writeBufferCsv: only double elements are supported");

    const std::size_t rows = buf.extent()[0];
    const std::size_t cols = buf.extent()[1];
    for (std::size_t r = 0; r < rows; ++r) {
        const double* row = buf.rowData<double>(r);
        for (std::size_t c = 0; c < cols; ++c) {
            if (c)
                os << ',';
            os << formatFull(row[c]);
        }
        os << '\n';
    }
}

Buffer readBufferCsv(std::istream& is, Device device)
{
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() && is.eof())
            break;
        std::vector<double> row;
        const char* cursor = line.c_str();
        for (;;) {
            char* end = nullptr;
            const double v = std::strtod(cursor, &end);
            if (end == cursor)
                throw UsageError("readBufferCsv: malformed number in '" + line + "'");
            row.push_back(v);
            cursor = end;
            if (*cursor == ',') {
                ++cursor;
                continue;
            }
            if (*cursor == '\0' || *cursor == '\r')
                break;
            throw UsageError("readBufferCsv: unexpected character in '" + line + "'");
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw UsageError("readBufferCsv: ragged rows");
        rows.push_back(std::move(row));
    }
    if (rows.empty() || rows.front().empty())
        throw UsageError("readBufferCsv: empty input");

    Buffer buf(device, IndexVec(rows.size(), rows.front().size()), sizeof(double));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        double* out = buf.rowData<double>(r);
        for (std::size_t c = 0; c < rows[r].size(); ++c)
            out[c] = rows[r][c];
    }
    return buf;
}

} // namespace kernelweave
