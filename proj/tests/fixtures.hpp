#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "cla/model.hpp"
#include "cla/parser.hpp"

#ifndef CLA_DATA_DIR
#error "CLA_DATA_DIR must point at the data/ directory"
#endif

namespace fixtures {

inline std::string read_file(const std::string& name) {
    std::ifstream in(std::string(CLA_DATA_DIR) + "/" + name, std::ios::binary);
    if (!in) throw std::runtime_error("missing fixture: " + name);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline cla::SutModel phone() { return cla::parse_model(read_file("phone.model")); }

inline cla::SutModel phone_unconstrained() {
    cla::SutModel m = phone();
    m.constraint = cla::ConstraintExpr::const_true();
    return m;
}

inline cla::TestArray array(const std::string& name, const cla::SutModel& model) {
    return cla::parse_array(read_file(name), model);
}

}  // namespace fixtures
