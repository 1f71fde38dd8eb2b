// Copyright 2026 The FADTK Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fadtk/csv.h"
#include "fadtk/ranking.h"

namespace fadtk {

const std::vector<Table2Row>& Table2Fixture() {
  static const std::vector<Table2Row> rows = {
      {"low pass", "critical frequency: 5000", -0.00, 0.94, 56},
      {"reverberations", "dampening: 0.2; delay: 1 s; echos: 3", -0.74, 0.24, 13},
      {"high pass", "critical frequency: 400", -0.92, 1.46, 41},
      {"speed up", "factor: 0.95", -1.02, 0.19, -21},
      {"high pass", "critical frequency: 500", -1.12, 2.34, 41},
      {"low pass", "critical frequency: 1500", -1.26, 2.39, 48},
      {"added gaussian noise", "stddev: 0.0031", -1.66, 0.55, 36},
      {"pitch down", "semi-tone: 0.25", -2.13, 0.63, -21},
      {"pitch down", "semi-tone: 0.1", -2.13, 0.65, -21},
      {"slow down pp", "factor: 1.05", -2.35, 2.25, -3},
      {"pops", "percentage: 0.00031", -2.36, 1.24, 21},
      {"slow down pp", "factor: 1.2", -2.87, 3.37, -10},
      {"pops", "percentage: 0.001", -2.99, 2.80, 16},
      {"added gaussian noise", "stddev: 0.01", -3.00, 0.94, 26},
      {"speed up pp", "factor: 0.95", -3.05, 1.43, -5},
      {"speed up", "factor: 0.8", -3.60, 0.82, -21},
      {"reverberations", "dampening: 0.4; delay: 0.25 s; echos: 5", -3.61, 1.08, 1},
      {"quantization", "bits: 4", -4.00, 1.63, 20},
      {"added gaussian noise", "stddev: 0.031", -4.54, 2.93, 16},
      {"speed up pp", "factor: 0.8", -4.67, 2.58, -12},
      {"quantization", "bits: 3", -5.10, 3.50, 14},
  };
  return rows;
}

std::string Table2Csv() {
  std::string out = CsvLine({"distortion", "parameters", "worth", "fad", "sdr"});
  for (const auto& row : Table2Fixture()) {
    out += CsvLine({row.distortion, row.parameters, FormatDouble(row.worth),
                    FormatDouble(row.fad), FormatDouble(row.sdr)});
  }
  return out;
}

}  // namespace fadtk
