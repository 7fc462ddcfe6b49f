// Generates the committed data set: toolkit files, environment fixtures, the
// scenario suite (explicit, ambiguous and infeasible queries for all five
// domains), and the reward fixture records.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "sage/envs.hpp"
#include "sage/simulator.hpp"

namespace fs = std::filesystem;
using sage::CandidateCall;
using sage::Value;
using sage::belief::AspectId;
using sage::sim::Request;
using sage::sim::Scenario;

namespace {

Value T(const char* s) { return Value::text(s); }
Value N(double n) { return Value::number(n); }
Value B(bool b) { return Value::boolean(b); }
Value NL(std::vector<double> ns) {
    Value::List items;
    for (double n : ns) items.push_back(Value::number(n));
    return Value::list(std::move(items));
}
Value TL(std::vector<const char*> ts) {
    Value::List items;
    for (const char* t : ts) items.push_back(Value::text(t));
    return Value::list(std::move(items));
}

CandidateCall C(const std::string& tool, std::vector<std::pair<std::string, Value>> args = {}) {
    CandidateCall call;
    call.tool = tool;
    for (auto& [name, value] : args) call.arguments[name] = std::move(value);
    return call;
}

Request R(const std::string& query, const std::string& intent, CandidateCall gt,
          std::vector<CandidateCall> proposed = {}) {
    Request r;
    r.query = query;
    r.intent = intent;
    r.ground_truth = {std::move(gt)};
    r.proposed = std::move(proposed);
    return r;
}

Scenario S(const std::string& id, const std::string& domain, const std::string& type,
           std::vector<Request> requests,
           std::vector<std::pair<std::string, Value>> hidden = {},
           std::vector<std::string> masked = {}) {
    Scenario s;
    s.id = id;
    s.domain = domain;
    s.query_type = type;
    s.requests = std::move(requests);
    for (auto& [aspect, value] : hidden) s.hidden[AspectId::parse(aspect)] = std::move(value);
    for (auto& aspect : masked) s.masked.push_back(AspectId::parse(aspect));
    return s;
}

std::vector<Scenario> filesystem_scenarios() {
    std::vector<Scenario> out;
    out.push_back(S("fs-exp-001", "filesystem", "explicit",
                    {R("Print the current working directory.", "locate the shell", C("pwd"))}));
    out.push_back(S("fs-exp-002", "filesystem", "explicit",
                    {R("Show me the contents of readme.txt.", "read the readme",
                       C("cat", {{"file_name", T("readme.txt")}}))}));
    out.push_back(S("fs-exp-003", "filesystem", "explicit",
                    {R("Write \"backup plan\" into plan.txt.", "create a note",
                       C("echo", {{"content", T("backup plan")}, {"file_name", T("plan.txt")}}))}));
    out.push_back(S("fs-exp-004", "filesystem", "explicit",
                    {R("Search data.csv for lines containing 1.", "filter the csv",
                       C("grep", {{"file_name", T("data.csv")}, {"pattern", T("1")}}))}));
    out.push_back(S("fs-exp-005", "filesystem", "explicit",
                    {R("Show the last two lines of readme.txt.", "peek at the readme tail",
                       C("tail", {{"file_name", T("readme.txt")}, {"lines", N(2)}}))}));
    out.push_back(S("fs-exp-006", "filesystem", "explicit",
                    {R("How much space does this directory use, human readable?",
                       "disk usage summary", C("du", {{"human_readable", B(true)}}))}));
    out.push_back(S("fs-exp-007", "filesystem", "explicit",
                    {R("Create a directory called projects.", "make the folder",
                       C("mkdir", {{"dir_name", T("projects")}})),
                     R("Now go into projects.", "enter the new folder",
                       C("cd", {{"folder", T("projects")}}))}));

    out.push_back(S("fs-amb-001", "filesystem", "ambiguous",
                    {R("Show me that file.", "read the readme",
                       C("cat", {{"file_name", T("readme.txt")}}))},
                    {{"cat.file_name", T("readme.txt")}}, {"cat.file_name"}));
    out.push_back(S("fs-amb-002", "filesystem", "ambiguous",
                    {R("Change into the folder.", "enter docs",
                       C("cd", {{"folder", T("docs")}}))},
                    {{"cd.folder", T("docs")}}, {"cd.folder"}));
    out.push_back(S("fs-amb-003", "filesystem", "ambiguous",
                    {R("Delete it, please.", "remove the csv",
                       C("rm", {{"file_name", T("data.csv")}}))},
                    {{"rm.file_name", T("data.csv")}}, {"rm.file_name"}));
    out.push_back(S("fs-amb-004", "filesystem", "ambiguous",
                    {R("Count the words in one of these files.", "word count on the csv",
                       C("wc", {{"file_name", T("data.csv")}, {"mode", T("w")}}))},
                    {{"wc.file_name", T("data.csv")}}, {"wc.file_name"}));
    out.push_back(S("fs-amb-005", "filesystem", "ambiguous",
                    {R("Compare the two files.", "diff csv against readme",
                       C("diff", {{"file_name1", T("data.csv")}, {"file_name2", T("readme.txt")}}))},
                    {{"diff.file_name1", T("data.csv")}, {"diff.file_name2", T("readme.txt")}},
                    {"diff.file_name1", "diff.file_name2"}));
    out.push_back(S("fs-amb-006", "filesystem", "ambiguous",
                    {R("Run a count on a file for me.", "character count on the csv",
                       C("wc", {{"file_name", T("data.csv")}, {"mode", T("c")}}))},
                    {{"wc.file_name", T("data.csv")}, {"wc.mode", T("c")}},
                    {"wc.file_name", "wc.mode"}));
    // The user cannot say which file; the agent should stop asking and commit.
    out.push_back(S("fs-amb-007", "filesystem", "ambiguous",
                    {R("Sort one of the files.", "sort whichever file",
                       C("sort", {{"file_name", T("data.csv")}}))},
                    {}, {"sort.file_name"}));

    out.push_back(S("fs-inf-001", "filesystem", "infeasible",
                    {R("Make a folder named projects|.", "create the projects folder",
                       C("mkdir", {{"dir_name", T("projects")}}),
                       {C("mkdir", {{"dir_name", T("projects|")}})})},
                    {{"mkdir.dir_name", T("projects")}}));
    out.push_back(S("fs-inf-002", "filesystem", "infeasible",
                    {R("Open ghost_1.txt.", "read the readme",
                       C("cat", {{"file_name", T("readme.txt")}}),
                       {C("cat", {{"file_name", T("ghost_1.txt")}})})},
                    {{"cat.file_name", T("readme.txt")}}));
    out.push_back(S("fs-inf-003", "filesystem", "infeasible",
                    {R("Create a docs directory.", "make a fresh folder",
                       C("mkdir", {{"dir_name", T("archive")}}),
                       {C("mkdir", {{"dir_name", T("docs")}})})},
                    {{"mkdir.dir_name", T("archive")}}));
    out.push_back(S("fs-inf-004", "filesystem", "infeasible",
                    {R("Go to ../etc.", "enter the docs folder",
                       C("cd", {{"folder", T("docs")}}),
                       {C("cd", {{"folder", T("../etc")}})})},
                    {{"cd.folder", T("docs")}}));
    out.push_back(S("fs-inf-005", "filesystem", "infeasible",
                    {R("Touch readme.txt for me.", "create a todo file",
                       C("touch", {{"file_name", T("todo.txt")}}),
                       {C("touch", {{"file_name", T("readme.txt")}})})},
                    {{"touch.file_name", T("todo.txt")}}));
    out.push_back(S("fs-inf-006", "filesystem", "infeasible",
                    {R("Remove ghost_2.txt.", "delete the csv",
                       C("rm", {{"file_name", T("data.csv")}}),
                       {C("rm", {{"file_name", T("ghost_2.txt")}})})},
                    {{"rm.file_name", T("data.csv")}}));
    out.push_back(S("fs-inf-007", "filesystem", "infeasible",
                    {R("Copy data.csv to /root/data.csv.", "back up the csv",
                       C("cp", {{"source", T("data.csv")}, {"destination", T("backup.csv")}}),
                       {C("cp", {{"source", T("data.csv")}, {"destination", T("/root/data.csv")}})})},
                    {{"cp.destination", T("backup.csv")}}));
    return out;
}

std::vector<Scenario> document_scenarios() {
    std::vector<Scenario> out;
    out.push_back(S("doc-exp-001", "document", "explicit",
                    {R("How many pages does the report have?", "page count", C("count_pages"))}));
    out.push_back(S("doc-exp-002", "document", "explicit",
                    {R("Search the document for the word synergy.", "find a term",
                       C("search", {{"object_name", T("synergy")}}))}));
    out.push_back(S("doc-exp-003", "document", "explicit",
                    {R("Protect the file with the password hunter2.", "set a password",
                       C("add_password", {{"password", T("hunter2")}}))}));
    out.push_back(S("doc-exp-004", "document", "explicit",
                    {R("Stamp CONFIDENTIAL across it at 30 percent opacity.", "add a watermark",
                       C("add_watermark",
                         {{"watermark_text", T("CONFIDENTIAL")}, {"transparency", N(0.3)}}))}));
    out.push_back(S("doc-exp-005", "document", "explicit",
                    {R("Convert the report to doc format as report.doc.", "convert to doc",
                       C("convert",
                         {{"format", T("doc")}, {"output_filename", T("report.doc")}}))}));
    out.push_back(S("doc-exp-006", "document", "explicit",
                    {R("Sign the last page in the bottom right corner, overwriting the file.",
                       "sign page ten",
                       C("add_signature", {{"page_num", N(10)},
                                           {"position", T("bottom-right")},
                                           {"overwrite", B(true)}}))}));
    out.push_back(S("doc-exp-007", "document", "explicit",
                    {R("Delete the last page, overwrite the file.", "drop page ten",
                       C("delete_page", {{"page_num", N(10)}, {"overwrite", B(true)}})),
                     R("Append a page that says Appendix.", "add the appendix",
                       C("add_page_with_text",
                         {{"text_content", T("Appendix")}, {"page_num", N(10)}}))}));

    out.push_back(S("doc-amb-001", "document", "ambiguous",
                    {R("Convert the report to an image for me.", "convert to png",
                       C("convert",
                         {{"format", T("png")}, {"output_filename", T("report.png")}}))},
                    {{"convert.format", T("png")}}, {"convert.format"}));
    out.push_back(S("doc-amb-002", "document", "ambiguous",
                    {R("Put my signature on the last page.", "sign in the center",
                       C("add_signature", {{"page_num", N(10)},
                                           {"position", T("center")},
                                           {"overwrite", B(true)}}))},
                    {{"add_signature.position", T("center")}}, {"add_signature.position"}));
    out.push_back(S("doc-amb-003", "document", "ambiguous",
                    {R("Remove page two.", "delete page two in place",
                       C("delete_page", {{"page_num", N(2)}, {"overwrite", B(true)}}))},
                    {{"delete_page.overwrite", B(true)}}, {"delete_page.overwrite"}));
    out.push_back(S("doc-amb-004", "document", "ambiguous",
                    {R("Pull out pages one through three.", "extract without overwriting",
                       C("extract_pages", {{"start_page", N(1)},
                                           {"end_page", N(3)},
                                           {"overwrite", B(false)}}))},
                    {{"extract_pages.overwrite", B(false)}}, {"extract_pages.overwrite"}));
    out.push_back(S("doc-amb-005", "document", "ambiguous",
                    {R("Convert the report and maybe zip it.", "tiff inside a zip",
                       C("convert", {{"format", T("tiff")},
                                     {"output_filename", T("report.tiff")},
                                     {"zip", B(true)}}))},
                    {{"convert.format", T("tiff")}, {"convert.zip", B(true)}},
                    {"convert.format", "convert.zip"}));
    out.push_back(S("doc-amb-006", "document", "ambiguous",
                    {R("Add a signature to page five.", "sign top left, keep original",
                       C("add_signature", {{"page_num", N(5)},
                                           {"position", T("top-left")},
                                           {"overwrite", B(false)}}))},
                    {{"add_signature.position", T("top-left")},
                     {"add_signature.overwrite", B(false)}},
                    {"add_signature.position", "add_signature.overwrite"}));
    // The user has no preference on overwriting; the agent should commit.
    out.push_back(S("doc-amb-007", "document", "ambiguous",
                    {R("Sign the first page in the center.", "sign page one",
                       C("add_signature", {{"page_num", N(1)},
                                           {"position", T("center")},
                                           {"overwrite", B(false)}}))},
                    {}, {"add_signature.overwrite"}));

    out.push_back(S("doc-inf-001", "document", "infeasible",
                    {R("Delete page fifteen, overwrite the file.", "delete page three",
                       C("delete_page", {{"page_num", N(3)}, {"overwrite", B(true)}}),
                       {C("delete_page", {{"page_num", N(15)}, {"overwrite", B(true)}})})},
                    {{"delete_page.page_num", N(3)}}));
    out.push_back(S("doc-inf-002", "document", "infeasible",
                    {R("Comment on page zero.", "comment on page two",
                       C("add_comment", {{"page_num", N(2)}, {"coordinates", NL({100, 200})}}),
                       {C("add_comment", {{"page_num", N(0)}, {"coordinates", NL({100, 200})}})})},
                    {{"add_comment.page_num", N(2)}}));
    out.push_back(S("doc-inf-003", "document", "infeasible",
                    {R("Redact pages minus two through four.", "redact the opening pages",
                       C("redact_page_range", {{"start_page", N(1)}, {"end_page", N(4)}}),
                       {C("redact_page_range", {{"start_page", N(-2)}, {"end_page", N(4)}})})},
                    {{"redact_page_range.start_page", N(1)}}));
    out.push_back(S("doc-inf-004", "document", "infeasible",
                    {R("Convert the report to webp.", "convert to jpeg",
                       C("convert",
                         {{"format", T("jpeg")}, {"output_filename", T("report.jpeg")}}),
                       {C("convert",
                          {{"format", T("webp")}, {"output_filename", T("report.jpeg")}})})},
                    {{"convert.format", T("jpeg")}}));
    out.push_back(S("doc-inf-005", "document", "infeasible",
                    {R("Watermark it as DRAFT at opacity 1.5.", "half-transparent draft stamp",
                       C("add_watermark", {{"watermark_text", T("DRAFT")}, {"transparency", N(0.5)}}),
                       {C("add_watermark",
                          {{"watermark_text", T("DRAFT")}, {"transparency", N(1.5)}})})},
                    {{"add_watermark.transparency", N(0.5)}}));
    out.push_back(S("doc-inf-006", "document", "infeasible",
                    {R("Comment on page four in hundred-point type.", "normal-size comment",
                       C("add_comment", {{"page_num", N(4)},
                                         {"coordinates", NL({50, 60})},
                                         {"font_size", N(14)}}),
                       {C("add_comment", {{"page_num", N(4)},
                                          {"coordinates", NL({50, 60})},
                                          {"font_size", N(100)}})})},
                    {{"add_comment.font_size", N(14)}}));
    out.push_back(S("doc-inf-007", "document", "infeasible",
                    {R("Delete pages three through eleven, overwriting.", "trim the middle",
                       C("delete_page_range", {{"start_page", N(3)},
                                               {"end_page", N(6)},
                                               {"overwrite", B(true)}}),
                       {C("delete_page_range", {{"start_page", N(3)},
                                                {"end_page", N(11)},
                                                {"overwrite", B(true)}})})},
                    {{"delete_page_range.end_page", N(6)}}));
    return out;
}

std::vector<Scenario> vehicle_scenarios() {
    std::vector<Scenario> out;
    out.push_back(S("veh-exp-001", "vehicle", "explicit",
                    {R("Start the engine.", "start up",
                       C("startEngine", {{"ignitionMode", T("START")}}))}));
    out.push_back(S("veh-exp-002", "vehicle", "explicit",
                    {R("Show me the fuel status.", "fuel readout",
                       C("displayCarStatus", {{"option", T("fuel")}}))}));
    out.push_back(S("veh-exp-003", "vehicle", "explicit",
                    {R("Turn the headlights on.", "lights on",
                       C("setHeadlights", {{"mode", T("on")}}))}));
    out.push_back(S("veh-exp-004", "vehicle", "explicit",
                    {R("Set the cabin to 21.5 degrees.", "adjust temperature",
                       C("adjustClimateControl", {{"temperature", N(21.5)}}))}));
    out.push_back(S("veh-exp-005", "vehicle", "explicit",
                    {R("Convert 20 liters to gallons.", "unit conversion",
                       C("liter_to_gallon", {{"liter", N(20)}}))}));
    out.push_back(S("veh-exp-006", "vehicle", "explicit",
                    {R("How far is 83214 from 74532?", "distance between zipcodes",
                       C("estimate_distance", {{"cityA", T("83214")}, {"cityB", T("74532")}}))}));
    out.push_back(S("veh-exp-007", "vehicle", "explicit",
                    {R("Start the engine.", "start up",
                       C("startEngine", {{"ignitionMode", T("START")}})),
                     R("Set cruise control to 60 and turn it on.", "cruise at sixty",
                       C("setCruiseControl", {{"speed", N(60)}, {"activate", B(true)}}))}));

    out.push_back(S("veh-amb-001", "vehicle", "ambiguous",
                    {R("Do something with the headlights.", "automatic headlights",
                       C("setHeadlights", {{"mode", T("auto")}}))},
                    {{"setHeadlights.mode", T("auto")}}, {"setHeadlights.mode"}));
    out.push_back(S("veh-amb-002", "vehicle", "ambiguous",
                    {R("Show me a status panel.", "door status",
                       C("displayCarStatus", {{"option", T("doors")}}))},
                    {{"displayCarStatus.option", T("doors")}}, {"displayCarStatus.option"}));
    out.push_back(S("veh-amb-003", "vehicle", "ambiguous",
                    {R("Deal with the parking brake.", "release the brake",
                       C("activateParkingBrake", {{"mode", T("release")}}))},
                    {{"activateParkingBrake.mode", T("release")}},
                    {"activateParkingBrake.mode"}));
    out.push_back(S("veh-amb-004", "vehicle", "ambiguous",
                    {R("Handle the front door locks.", "unlock the front doors",
                       C("lockDoors",
                         {{"unlock", B(true)}, {"door", TL({"driver", "passenger"})}}))},
                    {{"lockDoors.unlock", B(true)}}, {"lockDoors.unlock"}));
    out.push_back(S("veh-amb-005", "vehicle", "ambiguous",
                    {R("Start the engine.", "start up",
                       C("startEngine", {{"ignitionMode", T("START")}})),
                     R("Engage cruise control at my usual speed.", "cruise at forty",
                       C("setCruiseControl", {{"speed", N(40)}, {"activate", B(true)}}))},
                    {{"setCruiseControl.speed", N(40)}}, {"setCruiseControl.speed"}));
    out.push_back(S("veh-amb-006", "vehicle", "ambiguous",
                    {R("Set the climate to 22 the way I like it.", "fahrenheit heat mode",
                       C("adjustClimateControl", {{"temperature", N(22)},
                                                  {"unit", T("fahrenheit")},
                                                  {"mode", T("heat")}}))},
                    {{"adjustClimateControl.unit", T("fahrenheit")},
                     {"adjustClimateControl.mode", T("heat")}},
                    {"adjustClimateControl.unit", "adjustClimateControl.mode"}));
    // The user will not say which way to flip the ignition; commit after cost.
    out.push_back(S("veh-amb-007", "vehicle", "ambiguous",
                    {R("Flip the ignition.", "start the engine",
                       C("startEngine", {{"ignitionMode", T("START")}}))},
                    {}, {"startEngine.ignitionMode"}));

    out.push_back(S("veh-inf-001", "vehicle", "infeasible",
                    {R("Add 35 liters of fuel.", "top up fifteen liters",
                       C("fillFuelTank", {{"fuelAmount", N(15)}}),
                       {C("fillFuelTank", {{"fuelAmount", N(35)}})})},
                    {{"fillFuelTank.fuelAmount", N(15)}}));
    out.push_back(S("veh-inf-002", "vehicle", "infeasible",
                    {R("Set ignition to start.", "start the engine",
                       C("startEngine", {{"ignitionMode", T("START")}}),
                       {C("startEngine", {{"ignitionMode", T("start")}})})},
                    {{"startEngine.ignitionMode", T("START")}}));
    out.push_back(S("veh-inf-003", "vehicle", "infeasible",
                    {R("Headlights to ON.", "lights on",
                       C("setHeadlights", {{"mode", T("on")}}),
                       {C("setHeadlights", {{"mode", T("ON")}})})},
                    {{"setHeadlights.mode", T("on")}}));
    out.push_back(S("veh-inf-004", "vehicle", "infeasible",
                    {R("Heat the cabin to 100 degrees.", "warm to twenty-four",
                       C("adjustClimateControl", {{"temperature", N(24)}}),
                       {C("adjustClimateControl", {{"temperature", N(100)}})})},
                    {{"adjustClimateControl.temperature", N(24)}}));
    out.push_back(S("veh-inf-005", "vehicle", "infeasible",
                    {R("Put in minus three liters.", "add ten liters",
                       C("fillFuelTank", {{"fuelAmount", N(10)}}),
                       {C("fillFuelTank", {{"fuelAmount", N(-3)}})})},
                    {{"fillFuelTank.fuelAmount", N(10)}}));
    out.push_back(S("veh-inf-006", "vehicle", "infeasible",
                    {R("Parking brake to ENGAGE.", "engage the brake",
                       C("activateParkingBrake", {{"mode", T("engage")}}),
                       {C("activateParkingBrake", {{"mode", T("ENGAGE")}})})},
                    {{"activateParkingBrake.mode", T("engage")}}));
    out.push_back(S("veh-inf-007", "vehicle", "infeasible",
                    {R("Press the brake pedal to 2.0.", "press halfway",
                       C("pressBrakePedal", {{"pedalPosition", N(0.5)}}),
                       {C("pressBrakePedal", {{"pedalPosition", N(2.0)}})})},
                    {{"pressBrakePedal.pedalPosition", N(0.5)}}));
    return out;
}

std::vector<Scenario> travel_scenarios() {
    std::vector<Scenario> out;
    out.push_back(S("trav-exp-001", "travel", "explicit",
                    {R("List every airport you know.", "airport roster", C("list_all_airports"))}));
    out.push_back(S("trav-exp-002", "travel", "explicit",
                    {R("What's the balance on card_7629?", "card balance",
                       C("get_credit_card_balance", {{"card_id", T("card_7629")}}))}));
    out.push_back(S("trav-exp-003", "travel", "explicit",
                    {R("Convert 100 USD to EUR.", "exchange rate math",
                       C("compute_exchange_rate", {{"base_currency", T("USD")},
                                                   {"target_currency", T("EUR")},
                                                   {"value", N(100)}}))}));
    out.push_back(S("trav-exp-004", "travel", "explicit",
                    {R("Which airport is closest to Rivermist?", "nearest airport",
                       C("get_nearest_airport_by_city", {{"location", T("Rivermist")}}))}));
    out.push_back(S("trav-exp-005", "travel", "explicit",
                    {R("Verify Avery Quinn, born 1990-04-12, passport P1234567.",
                       "traveler verification",
                       C("verify_traveler_information", {{"first_name", T("Avery")},
                                                         {"last_name", T("Quinn")},
                                                         {"date_of_birth", T("1990-04-12")},
                                                         {"passport_number", T("P1234567")}}))}));
    out.push_back(S("trav-exp-006", "travel", "explicit",
                    {R("Cap my travel budget at 3000.", "set the budget",
                       C("set_budget_limit", {{"budget_limit", N(3000)}}))}));
    out.push_back(S("trav-exp-007", "travel", "explicit",
                    {R("Book SFO to JFK on 2026-09-01, economy, 500 on card_7629.",
                       "book the flight",
                       C("book_flight", {{"card_id", T("card_7629")},
                                         {"travel_date", T("2026-09-01")},
                                         {"travel_from", T("SFO")},
                                         {"travel_to", T("JFK")},
                                         {"travel_class", T("economy")},
                                         {"travel_cost", N(500)}})),
                     R("Get me the invoice for that booking.", "fetch the invoice",
                       C("retrieve_invoice", {{"booking_id", T("BK1001")}}))}));

    out.push_back(S("trav-amb-001", "travel", "ambiguous",
                    {R("Price the SFO to JFK flight on 2026-09-01.", "economy fare",
                       C("get_flight_cost", {{"travel_from", T("SFO")},
                                             {"travel_to", T("JFK")},
                                             {"travel_date", T("2026-09-01")},
                                             {"travel_class", T("economy")}}))},
                    {{"get_flight_cost.travel_class", T("economy")}},
                    {"get_flight_cost.travel_class"}));
    out.push_back(S("trav-amb-002", "travel", "ambiguous",
                    {R("Convert 250 dollars to my currency.", "dollars to yen",
                       C("compute_exchange_rate", {{"base_currency", T("USD")},
                                                   {"target_currency", T("JPY")},
                                                   {"value", N(250)}}))},
                    {{"compute_exchange_rate.target_currency", T("JPY")}},
                    {"compute_exchange_rate.target_currency"}));
    out.push_back(S("trav-amb-003", "travel", "ambiguous",
                    {R("Find the airport for my town.", "Maplewood's airport",
                       C("get_nearest_airport_by_city", {{"location", T("Maplewood")}}))},
                    {{"get_nearest_airport_by_city.location", T("Maplewood")}},
                    {"get_nearest_airport_by_city.location"}));
    out.push_back(S("trav-amb-004", "travel", "ambiguous",
                    {R("Book me out of SFO on 2026-09-01, economy, 500 budgeted.",
                       "fly to JFK",
                       C("book_flight", {{"card_id", T("card_7629")},
                                         {"travel_date", T("2026-09-01")},
                                         {"travel_from", T("SFO")},
                                         {"travel_to", T("JFK")},
                                         {"travel_class", T("economy")},
                                         {"travel_cost", N(500)}}))},
                    {{"book_flight.travel_to", T("JFK")}}, {"book_flight.travel_to"}));
    out.push_back(S("trav-amb-005", "travel", "ambiguous",
                    {R("Price a business-class flight on 2026-10-10.", "ORD to SFO fare",
                       C("get_flight_cost", {{"travel_from", T("ORD")},
                                             {"travel_to", T("SFO")},
                                             {"travel_date", T("2026-10-10")},
                                             {"travel_class", T("business")}}))},
                    {{"get_flight_cost.travel_from", T("ORD")},
                     {"get_flight_cost.travel_to", T("SFO")}},
                    {"get_flight_cost.travel_from", "get_flight_cost.travel_to"}));
    out.push_back(S("trav-amb-006", "travel", "ambiguous",
                    {R("Price me a flight on 2026-11-05.", "first class LAX to BOS",
                       C("get_flight_cost", {{"travel_from", T("LAX")},
                                             {"travel_to", T("BOS")},
                                             {"travel_date", T("2026-11-05")},
                                             {"travel_class", T("first")}}))},
                    {{"get_flight_cost.travel_from", T("LAX")},
                     {"get_flight_cost.travel_to", T("BOS")},
                     {"get_flight_cost.travel_class", T("first")}},
                    {"get_flight_cost.travel_from", "get_flight_cost.travel_to",
                     "get_flight_cost.travel_class"}));
    // The user won't commit to a cabin class; execute after the cost rises.
    out.push_back(S("trav-amb-007", "travel", "ambiguous",
                    {R("Price the SFO to LAX hop on 2026-12-01.", "any class quote",
                       C("get_flight_cost", {{"travel_from", T("SFO")},
                                             {"travel_to", T("LAX")},
                                             {"travel_date", T("2026-12-01")},
                                             {"travel_class", T("economy")}}))},
                    {}, {"get_flight_cost.travel_class"}));

    out.push_back(S("trav-inf-001", "travel", "infeasible",
                    {R("Book SFO to JFK on 2026-09-01 economy for 9500.", "book at the real fare",
                       C("book_flight", {{"card_id", T("card_7629")},
                                         {"travel_date", T("2026-09-01")},
                                         {"travel_from", T("SFO")},
                                         {"travel_to", T("JFK")},
                                         {"travel_class", T("economy")},
                                         {"travel_cost", N(500)}}),
                       {C("book_flight", {{"card_id", T("card_7629")},
                                          {"travel_date", T("2026-09-01")},
                                          {"travel_from", T("SFO")},
                                          {"travel_to", T("JFK")},
                                          {"travel_class", T("economy")},
                                          {"travel_cost", N(9500)}})})},
                    {{"book_flight.travel_cost", N(500)}}));
    out.push_back(S("trav-inf-002", "travel", "infeasible",
                    {R("Price SFO to ZZZ on 2026-09-15.", "quote the JFK leg",
                       C("get_flight_cost", {{"travel_from", T("SFO")},
                                             {"travel_to", T("JFK")},
                                             {"travel_date", T("2026-09-15")},
                                             {"travel_class", T("economy")}}),
                       {C("get_flight_cost", {{"travel_from", T("SFO")},
                                              {"travel_to", T("ZZZ")},
                                              {"travel_date", T("2026-09-15")},
                                              {"travel_class", T("economy")}})})},
                    {{"get_flight_cost.travel_to", T("JFK")}}));
    out.push_back(S("trav-inf-003", "travel", "infeasible",
                    {R("Book SFO to JFK on 2026-09-01, economy, 500 on card_7629.",
                       "book the flight",
                       C("book_flight", {{"card_id", T("card_7629")},
                                         {"travel_date", T("2026-09-01")},
                                         {"travel_from", T("SFO")},
                                         {"travel_to", T("JFK")},
                                         {"travel_class", T("economy")},
                                         {"travel_cost", N(500)}})),
                     R("Cancel booking BK9999.", "cancel the new booking",
                       C("cancel_booking", {{"booking_id", T("BK1001")}}),
                       {C("cancel_booking", {{"booking_id", T("BK9999")}})})},
                    {{"cancel_booking.booking_id", T("BK1001")}}));
    out.push_back(S("trav-inf-004", "travel", "infeasible",
                    {R("Book a flight from SFO to SFO on 2026-10-01.", "hop to LAX",
                       C("book_flight", {{"card_id", T("card_7629")},
                                         {"travel_date", T("2026-10-01")},
                                         {"travel_from", T("SFO")},
                                         {"travel_to", T("LAX")},
                                         {"travel_class", T("economy")},
                                         {"travel_cost", N(120)}}),
                       {C("book_flight", {{"card_id", T("card_7629")},
                                          {"travel_date", T("2026-10-01")},
                                          {"travel_from", T("SFO")},
                                          {"travel_to", T("SFO")},
                                          {"travel_class", T("economy")},
                                          {"travel_cost", N(120)}})})},
                    {{"book_flight.travel_to", T("LAX")}}));
    out.push_back(S("trav-inf-005", "travel", "infeasible",
                    {R("Book SFO to JFK on 2026-09-01, economy, 500 on card_7629.",
                       "book the flight",
                       C("book_flight", {{"card_id", T("card_7629")},
                                         {"travel_date", T("2026-09-01")},
                                         {"travel_from", T("SFO")},
                                         {"travel_to", T("JFK")},
                                         {"travel_class", T("economy")},
                                         {"travel_cost", N(500)}})),
                     R("Insure booking BK9999, premium, 300 on card_7629.",
                       "insure the new booking",
                       C("purchase_insurance", {{"insurance_type", T("premium")},
                                                {"booking_id", T("BK1001")},
                                                {"insurance_cost", N(300)},
                                                {"card_id", T("card_7629")}}),
                       {C("purchase_insurance", {{"insurance_type", T("premium")},
                                                 {"booking_id", T("BK9999")},
                                                 {"insurance_cost", N(300)},
                                                 {"card_id", T("card_7629")}})})},
                    {{"purchase_insurance.booking_id", T("BK1001")}}));
    out.push_back(S("trav-inf-006", "travel", "infeasible",
                    {R("Book JFK to ORD on 2026-11-11 with a negative fare.", "book at 220",
                       C("book_flight", {{"card_id", T("card_7629")},
                                         {"travel_date", T("2026-11-11")},
                                         {"travel_from", T("JFK")},
                                         {"travel_to", T("ORD")},
                                         {"travel_class", T("economy")},
                                         {"travel_cost", N(220)}}),
                       {C("book_flight", {{"card_id", T("card_7629")},
                                          {"travel_date", T("2026-11-11")},
                                          {"travel_from", T("JFK")},
                                          {"travel_to", T("ORD")},
                                          {"travel_class", T("economy")},
                                          {"travel_cost", N(-100)}})})},
                    {{"book_flight.travel_cost", N(220)}}));
    out.push_back(S("trav-inf-007", "travel", "infeasible",
                    {R("Book SFO to JFK on 2026-09-01, economy, 500 on card_7629.",
                       "book the flight",
                       C("book_flight", {{"card_id", T("card_7629")},
                                         {"travel_date", T("2026-09-01")},
                                         {"travel_from", T("SFO")},
                                         {"travel_to", T("JFK")},
                                         {"travel_class", T("economy")},
                                         {"travel_cost", N(500)}})),
                     R("Tell support booking BK9999 needs a wheelchair.", "message support",
                       C("contact_customer_support", {{"booking_id", T("BK1001")},
                                                      {"message", T("Need a wheelchair.")}}),
                       {C("contact_customer_support", {{"booking_id", T("BK9999")},
                                                       {"message", T("Need a wheelchair.")}})})},
                    {{"contact_customer_support.booking_id", T("BK1001")}}));
    return out;
}

std::vector<Scenario> trading_scenarios() {
    std::vector<Scenario> out;
    out.push_back(S("trd-exp-001", "trading", "explicit",
                    {R("Show my account info.", "account snapshot", C("get_account_info"))}));
    out.push_back(S("trd-exp-002", "trading", "explicit",
                    {R("Get me NVDA's stock info.", "quote NVDA",
                       C("get_stock_info", {{"symbol", T("NVDA")}}))}));
    out.push_back(S("trd-exp-003", "trading", "explicit",
                    {R("What's on my watchlist?", "list the watchlist", C("get_watchlist"))}));
    out.push_back(S("trd-exp-004", "trading", "explicit",
                    {R("Show order 1001.", "inspect the pending order",
                       C("get_order_details", {{"order_id", N(1001)}}))}));
    out.push_back(S("trd-exp-005", "trading", "explicit",
                    {R("Add MSFT to my watchlist.", "watch MSFT",
                       C("add_to_watchlist", {{"stock", T("MSFT")}}))}));
    out.push_back(S("trd-exp-006", "trading", "explicit",
                    {R("Deposit 500 into my account.", "fund the account",
                       C("make_transaction", {{"xact_type", T("deposit")}, {"amount", N(500)}}))}));
    out.push_back(S("trd-exp-007", "trading", "explicit",
                    {R("Buy 10 shares of AAPL at 225.", "place the buy",
                       C("place_order", {{"order_type", T("Buy")},
                                         {"symbol", T("AAPL")},
                                         {"price", N(225)},
                                         {"amount", N(10)}})),
                     R("Actually, cancel order 1003.", "cancel the new order",
                       C("cancel_order", {{"order_id", N(1003)}}))}));

    out.push_back(S("trd-amb-001", "trading", "ambiguous",
                    {R("Pull up that stock for me.", "quote GOOG",
                       C("get_stock_info", {{"symbol", T("GOOG")}}))},
                    {{"get_stock_info.symbol", T("GOOG")}}, {"get_stock_info.symbol"}));
    out.push_back(S("trd-amb-002", "trading", "ambiguous",
                    {R("Drop one from my watchlist.", "stop watching AAPL",
                       C("remove_stock_from_watchlist", {{"symbol", T("AAPL")}}))},
                    {{"remove_stock_from_watchlist.symbol", T("AAPL")}},
                    {"remove_stock_from_watchlist.symbol"}));
    out.push_back(S("trd-amb-003", "trading", "ambiguous",
                    {R("List stocks in my sector.", "energy sector listing",
                       C("get_available_stocks", {{"sector", T("Energy")}}))},
                    {{"get_available_stocks.sector", T("Energy")}},
                    {"get_available_stocks.sector"}));
    out.push_back(S("trd-amb-004", "trading", "ambiguous",
                    {R("Move 1000 through my account.", "withdraw the money",
                       C("make_transaction", {{"xact_type", T("withdrawal")}, {"amount", N(1000)}}))},
                    {{"make_transaction.xact_type", T("withdrawal")}},
                    {"make_transaction.xact_type"}));
    out.push_back(S("trd-amb-005", "trading", "ambiguous",
                    {R("Put in an order: 5 shares at 210.10.", "buy JPM",
                       C("place_order", {{"order_type", T("Buy")},
                                         {"symbol", T("JPM")},
                                         {"price", N(210.1)},
                                         {"amount", N(5)}}))},
                    {{"place_order.order_type", T("Buy")}, {"place_order.symbol", T("JPM")}},
                    {"place_order.order_type", "place_order.symbol"}));
    out.push_back(S("trd-amb-006", "trading", "ambiguous",
                    {R("Look up a stock for me.", "quote XOM",
                       C("get_stock_info", {{"symbol", T("XOM")}})),
                     R("Now list a sector.", "finance sector listing",
                       C("get_available_stocks", {{"sector", T("Finance")}}))},
                    {{"get_stock_info.symbol", T("XOM")},
                     {"get_available_stocks.sector", T("Finance")}},
                    {"get_stock_info.symbol", "get_available_stocks.sector"}));
    // The user never says deposit or withdrawal; the agent should commit.
    out.push_back(S("trd-amb-007", "trading", "ambiguous",
                    {R("Move 250 through my account.", "deposit the money",
                       C("make_transaction", {{"xact_type", T("deposit")}, {"amount", N(250)}}))},
                    {}, {"make_transaction.xact_type"}));

    out.push_back(S("trd-inf-001", "trading", "infeasible",
                    {R("Get ZZZZ's stock info.", "quote AAPL",
                       C("get_stock_info", {{"symbol", T("AAPL")}}),
                       {C("get_stock_info", {{"symbol", T("ZZZZ")}})})},
                    {{"get_stock_info.symbol", T("AAPL")}}));
    out.push_back(S("trd-inf-002", "trading", "infeasible",
                    {R("Buy 2 NVDA at minus ten.", "buy at the market price",
                       C("place_order", {{"order_type", T("Buy")},
                                         {"symbol", T("NVDA")},
                                         {"price", N(880)},
                                         {"amount", N(2)}}),
                       {C("place_order", {{"order_type", T("Buy")},
                                          {"symbol", T("NVDA")},
                                          {"price", N(-10)},
                                          {"amount", N(2)}})})},
                    {{"place_order.price", N(880)}}));
    out.push_back(S("trd-inf-003", "trading", "infeasible",
                    {R("Cancel order 1002.", "cancel the pending order",
                       C("cancel_order", {{"order_id", N(1001)}}),
                       {C("cancel_order", {{"order_id", N(1002)}})})},
                    {{"cancel_order.order_id", N(1001)}}));
    out.push_back(S("trd-inf-004", "trading", "infeasible",
                    {R("Buy 60 shares of AAPL at 227.16.", "buy twenty shares",
                       C("place_order", {{"order_type", T("Buy")},
                                         {"symbol", T("AAPL")},
                                         {"price", N(227.16)},
                                         {"amount", N(20)}}),
                       {C("place_order", {{"order_type", T("Buy")},
                                          {"symbol", T("AAPL")},
                                          {"price", N(227.16)},
                                          {"amount", N(60)}})})},
                    {{"place_order.amount", N(20)}}));
    out.push_back(S("trd-inf-005", "trading", "infeasible",
                    {R("Withdraw 50000.", "withdraw two thousand",
                       C("make_transaction", {{"xact_type", T("withdrawal")}, {"amount", N(2000)}}),
                       {C("make_transaction",
                          {{"xact_type", T("withdrawal")}, {"amount", N(50000)}})})},
                    {{"make_transaction.amount", N(2000)}}));
    out.push_back(S("trd-inf-006", "trading", "infeasible",
                    {R("Add msft to the watchlist.", "watch MSFT",
                       C("add_to_watchlist", {{"stock", T("MSFT")}}),
                       {C("add_to_watchlist", {{"stock", T("msft")}})})},
                    {{"add_to_watchlist.stock", T("MSFT")}}));
    out.push_back(S("trd-inf-007", "trading", "infeasible",
                    {R("Cancel order 9999.", "cancel the pending order",
                       C("cancel_order", {{"order_id", N(1001)}}),
                       {C("cancel_order", {{"order_id", N(9999)}})})},
                    {{"cancel_order.order_id", N(1001)}}));
    return out;
}

// Hand-built completion records with known reward totals; the tests pin the
// expected breakdowns for both reward modes.
std::vector<nlohmann::json> reward_fix()
{
    using nlohmann::json;
    std::vector<json> records;

    auto wrap = [](const std::string& reasoning, const std::string& body) {
        return "<reasoning>\n" + reasoning + "\n</reasoning>\n<answer>\n" + body + "\n</answer>\n";
    };

    // Exact tool call, fully specified: baseline and certainty totals 4.5.
    records.push_back(json{
        {"completion",
         wrap("The symbol is stated outright.",
              "<TOOLCALL>\n[{\"name\": \"get_stock_info\", \"arguments\": {\"symbol\": "
              "\"AAPL\"}}]\n</TOOLCALL>")},
        {"gold_action", "toolcall"},
        {"gold_call",
         {{"tool", "get_stock_info"}, {"arguments", {{"symbol", "AAPL"}}}}},
        {"toolkit", "trading"}});

    // Structured question over a half-known call: certainty 0.5 halves the
    // classification term (baseline 4.0, certainty mode 3.0).
    records.push_back(json{
        {"completion",
         wrap("Direction of the transfer is unknown; the amount is given.",
              "<ASK>\n<TOOLCALL>\n[{\"name\": \"make_transaction\", \"arguments\": "
              "{\"xact_type\": \"<UNK>\", \"amount\": 500.0}}]\n</TOOLCALL>\n<question>\nShould "
              "this 500 be a deposit or a withdrawal?\n</question>\n</ASK>")},
        {"gold_action", "ask"},
        {"toolkit", "trading"}});

    // Correct refusal tag with short content: classification 1.5, total 3.5.
    records.push_back(json{{"completion", wrap("Nothing here can help.", "<REFUSE>\nNo.\n</REFUSE>")},
                           {"gold_action", "refuse"},
                           {"toolkit", "filesystem"}});

    // Wrong action against a tool-call gold: no call on one side scores zero,
    // wrong tag scores zero, format carries the total to 1.5.
    records.push_back(json{
        {"completion", wrap("I can answer without tools.",
                            "<DIRECTLY>\nThe report has about ten pages, give or take.\n</DIRECTLY>")},
        {"gold_action", "toolcall"},
        {"gold_call", {{"tool", "count_pages"}, {"arguments", json::object()}}},
        {"toolkit", "document"}});

    // Same tool, one argument off, plus trailing content after the answer tag:
    // soft format holds, strict fails, the tail costs 0.002.
    records.push_back(json{
        {"completion",
         wrap("Price and symbol match the request; quantity is my best guess.",
              "<TOOLCALL>\n[{\"name\": \"place_order\", \"arguments\": {\"order_type\": \"Buy\", "
              "\"symbol\": \"NVDA\", \"price\": 880.0, \"amount\": 3.0}}]\n</TOOLCALL>") +
             "ok"},
        {"gold_action", "toolcall"},
        {"gold_call",
         {{"tool", "place_order"},
          {"arguments",
           {{"order_type", "Buy"}, {"symbol", "NVDA"}, {"price", 880.0}, {"amount", 2.0}}}}},
        {"toolkit", "trading"}});

    // Bare question classified by the question-mark heuristic: no tags, no
    // format credit, certainty cannot be assessed.
    records.push_back(json{{"completion", "Could you tell me which file you mean?"},
                           {"gold_action", "ask"},
                           {"toolkit", "filesystem"}});

    return records;
}

bool write_text(const fs::path& path, const std::string& content) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "cannot write " << path.string() << "\n";
        return false;
    }
    out << content;
    return true;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"regenerate the committed data set"};
    std::string out_dir = "data";
    app.add_option("--out", out_dir, "data directory to write");
    CLI11_PARSE(app, argc, argv);

    fs::path root = out_dir;
    int files = 0;

    for (const auto& domain : sage::envs::environment_names()) {
        std::string toolkit = sage::serialize_toolkit(sage::envs::builtin_toolkit(domain));
        if (!write_text(root / "toolkits" / (domain + ".json"), toolkit)) return 1;
        std::string fixture = sage::envs::default_fixture(domain).dump(2) + "\n";
        if (!write_text(root / "fixtures" / (domain + ".json"), fixture)) return 1;
        files += 2;
    }

    std::vector<Scenario> scenarios;
    for (auto& s : filesystem_scenarios()) scenarios.push_back(std::move(s));
    for (auto& s : document_scenarios()) scenarios.push_back(std::move(s));
    for (auto& s : vehicle_scenarios()) scenarios.push_back(std::move(s));
    for (auto& s : travel_scenarios()) scenarios.push_back(std::move(s));
    for (auto& s : trading_scenarios()) scenarios.push_back(std::move(s));
    for (const auto& scenario : scenarios) {
        if (!write_text(root / "scenarios" / (scenario.id + ".json"),
                        sage::sim::serialize_scenario(scenario)))
            return 1;
        ++files;
    }

    std::string rewards;
    for (const auto& record : reward_fix()) rewards += record.dump() + "\n";
    if (!write_text(root / "rewards" / "fixtures.jsonl", rewards)) return 1;
    ++files;

    std::cout << "wrote " << files << " files (" << scenarios.size() << " scenarios) under "
              << root.string() << "\n";
    return 0;
}
