#pragma once

#include "qfan/io.hpp"

#include <string>

inline qfan::FanFile load_fixture(const std::string& name)
{
    return qfan::parse_fan_file(std::string(QFAN_FIXTURES) + "/" + name);
}
