#!/usr/bin/env python3
"""Regenerates data/fixtures/specs and data/fixtures/eval from the cases below."""
import json
import pathlib

ROOT = pathlib.Path(__file__).resolve().parents[2] / "data" / "fixtures"


def uc(id, name, objective, actors, pre, post, constraints, flow, importance=None):
    u = {"id": id, "name": name, "objective": objective, "actors": actors, "pre_conditions": pre,
         "post_conditions": post, "constraints": constraints, "normal_flow": flow}
    if importance is not None:
        u["importance_score"] = importance
    return u


CASES = []


def case(slug, expected, notes, short, detailed, software_type, use_cases, nfrs):
    CASES.append((slug, expected, notes, {
        "short_description": short,
        "detailed_description": detailed,
        "use_cases": use_cases,
        "nfrs": nfrs,
        "software_type": software_type,
    }))


case("cms_university", "MVC", "Joomla, Drupal and WordPress are built around MVC or a close variant.",
     "Content management system for a university website",
     "The platform should help users build and maintain the web pages of a university. Pre-approved users should be "
     "able to publish online without programming. It should provide an integrated workflow, and users should have "
     "different levels of permissions. Pages must be verified by particular users before they are published. The site "
     "should be driven by data so that a change to a template is applied uniformly across all pages. It should also keep "
     "a record of day to day administrative decisions and send reminders when information needs to change.",
     "data-dominant/content-management-system",
     [
         uc("UC1", "Publish page", "Editors create and publish web pages from templates without programming",
            "Editor, reviewer", "The editor is logged in with publishing permission",
            "The page is visible on the website with the current template",
            "Pages must be approved by a reviewer before they are shown",
            "The editor picks a template, enters the content in a form, submits it for review, and the reviewer approves it."),
         uc("UC2", "Change site theme", "Administrators change the look of every page at once by editing templates",
            "Administrator", "A new theme is available", "All pages display with the new theme",
            "Content must not be changed when the theme changes",
            "The administrator uploads a theme, previews several pages, and activates it for the whole site."),
         uc("UC3", "Manage permissions", "Assign users different levels of permission for editing and publishing",
            "Administrator, user", "The user has an account", "The user can edit only the allowed sections",
            "Only administrators can grant permissions",
            "The administrator opens the user form, selects the sections and roles, and saves the changes."),
         uc("UC4", "Send reminders", "Remind the responsible person when page content is out of date",
            "Scheduler, editor", "A page has an expiry date", "The editor receives a reminder by email",
            "Reminders are sent at most once a day",
            "The scheduler checks the expiry dates, finds stale pages, and emails the responsible editor."),
     ],
     ["usability", "maintainability"])

case("environment_compatibility_tool", "Microkernel",
     "Vagrant creates environments through provider and provisioner plugins around a small core.",
     "A tool which handles compatibility issues when running a program on another environment",
     "This tool should help the user run source code written for one environment on another one, based on the "
     "specifications given. In other words it should be able to create the environment specified by the user inside a "
     "virtual environment. New platforms, operating systems and providers appear often, so support for them must be "
     "added as plugins without changing the core of the tool.",
     "data-dominant/development-environment-tool",
     [
         uc("UC1", "Create environment", "Create the environment described by the user specification in a virtual machine",
            "Developer", "A specification file describes the target environment",
            "A running virtual environment matches the specification",
            "The tool must work on several host operating systems",
            "The developer writes the specification, runs the tool, and the tool selects a provider plugin to build the environment."),
         uc("UC2", "Add provider", "Support a new virtualization platform through a plugin",
            "Plugin author", "The core exposes a plugin interface", "The new platform can be selected in specifications",
            "Adding a provider must not require changes to the core",
            "The author implements the plugin interface, installs the plugin, and the core registers it."),
         uc("UC3", "Run program", "Run a program built for another environment without changing its code",
            "Developer", "The environment is running", "The program runs with the same behavior as on its original platform",
            "Compatibility between environments is essential",
            "The developer starts the program inside the environment and the tool adapts system calls for it."),
     ],
     ["portability", "maintainability"])

case("academic_shell", "Pipes-and-Filters", "Unix shells and PowerShell compose commands through pipelines.",
     "Provide shell like capabilities in a limited manner for teaching",
     "The software should be a lightweight working shell on a Unix environment. It should include the basic "
     "functionality of a Unix shell such as running commands, redirecting input and output and chaining commands so that "
     "the output of one command is the input of the next. It should be usable for academic purposes and easy to extend "
     "or modify so that students can learn from it in practice.",
     "systems/shell-emulator",
     [
         uc("UC1", "Run command", "Run a command typed by the user and show its output",
            "Student", "The shell is started", "The output of the command is printed",
            "Commands run one after another",
            "The student types a command, the shell parses it, runs the program and prints its output."),
         uc("UC2", "Chain commands", "Connect commands so that the output stream of one becomes the input of the next",
            "Student", "Several commands are entered on one line", "The final command writes the transformed data",
            "Intermediate results should not be stored in files",
            "The student joins commands with a pipe; each command reads its input, transforms the data and writes it to the next command."),
         uc("UC3", "Add builtin", "Extend the shell with a new command", "Instructor",
            "The source code is available", "The new command can be combined with existing commands",
            "Adding a command must not change the others",
            "The instructor writes the command, registers it, and uses it in a chain of commands."),
     ],
     ["usability", "maintainability"])

case("mini_compiler", "Pipes-and-Filters",
     "Classic compilers pass the program through lexing, parsing, analysis and code generation stages.",
     "A simple compiler for a small teaching language",
     "The compiler reads source files of a small imperative language and produces assembly code. The source is "
     "processed in stages: lexical analysis turns characters into tokens, the parser builds a syntax tree, semantic "
     "analysis checks types and names, an optimizer simplifies the tree and code generation writes the output. Each "
     "stage should be replaceable so that students can swap in their own implementation.",
     "systems/compiler",
     [
         uc("UC1", "Compile file", "Transform a source file into assembly code through successive processing stages",
            "Student", "A source file exists", "An assembly file is written",
            "Each stage consumes only the output of the previous stage",
            "The compiler reads the file, tokenizes it, parses the tokens, checks the tree, and generates code."),
         uc("UC2", "Replace stage", "Exchange one compiler stage for a student implementation",
            "Student", "The student stage implements the stage interface", "The compiler uses the new stage",
            "Stages must not share state",
            "The student registers the new stage and the compiler runs the input through it."),
         uc("UC3", "Report errors", "Report syntax and type errors with line numbers", "Student",
            "The source contains mistakes", "All errors are listed", "Error reporting must not stop other stages from checking",
            "The stage that finds an error records it and passes the data on to the next stage."),
     ],
     ["maintainability", "reliability"])

case("medical_expert_system", "Blackboard",
     "Diagnostic expert systems such as HEARSAY-style designs combine independent knowledge sources.",
     "An expert system that suggests a diagnosis from symptoms and test results",
     "The system helps physicians reach a diagnosis when symptoms are incomplete and test results are uncertain. "
     "Knowledge from several medical specialties, such as cardiology, laboratory medicine and radiology, contributes "
     "partial hypotheses. No fixed algorithm exists, so the system must combine heuristics opportunistically and revise "
     "hypotheses as new evidence arrives. Specialists should be able to add new rules and knowledge without rebuilding it.",
     "computation-dominant/expert-system",
     [
         uc("UC1", "Suggest diagnosis", "Combine partial hypotheses from several specialties into a ranked diagnosis",
            "Physician", "Symptoms and test results are entered", "A ranked list of hypotheses with confidence is shown",
            "The data is noisy and uncertain",
            "The physician enters findings; each specialty module reads them, posts hypotheses, and the control selects the next module until a diagnosis is found."),
         uc("UC2", "Add knowledge", "Add rules from a new specialty", "Medical expert",
            "The knowledge format is documented", "The new rules contribute to later diagnoses",
            "Existing knowledge sources must not change",
            "The expert writes the rules, loads them as a new knowledge source, and tests them on past cases."),
     ],
     ["reliability", "maintainability"])

case("online_bookstore", "MVC", "Web shops built on Rails, Django or Spring MVC.",
     "Web based online bookstore",
     "Customers browse a catalog of books on web pages, search by title or author, put books in a cart and pay online. "
     "Staff maintain the catalog through administration pages. The same book data is shown in list pages, detail pages "
     "and a mobile view, and the look of the site changes with seasonal themes.",
     "data-dominant/web-application",
     [
         uc("UC1", "Browse catalog", "Show books in list and detail pages", "Customer",
            "The catalog contains books", "The customer sees the selected book", "Pages must load quickly",
            "The customer opens the catalog page, filters by genre, and selects a book to view its details."),
         uc("UC2", "Checkout", "Buy the books in the cart", "Customer, payment service",
            "The cart contains books", "An order is stored and confirmed", "Payments must be secure",
            "The customer reviews the cart, enters the address in a form, pays, and receives a confirmation page."),
         uc("UC3", "Edit catalog", "Staff add and update books", "Staff",
            "The staff member is logged in", "The changes are visible on every page showing the book",
            "Only staff may edit", "The staff member opens the edit form, changes the data, and saves it."),
     ],
     ["usability", "reliability"])

case("enterprise_middleware", "Broker", "CORBA ORBs and enterprise service buses.",
     "Middleware connecting distributed services across the company",
     "Departments run services on different machines, platforms and languages. Client applications must call these "
     "remote services without knowing where they run. Services are added, moved and replaced at run time, and the "
     "middleware should hide network communication and locate the right server for each request.",
     "systems/middleware",
     [
         uc("UC1", "Call remote service", "Invoke a remote service without knowing its location",
            "Client application", "The service is registered", "The client receives the result",
            "Calls cross platforms and languages",
            "The client sends the request through a proxy, the middleware locates the server, forwards the request and returns the result."),
         uc("UC2", "Register service", "Make a new service available to clients", "Service provider",
            "The service implements its interface", "Clients can call the service",
            "Registration must not interrupt running clients",
            "The provider starts the server, which registers its services with the middleware."),
     ],
     ["reliability", "scalability"])

case("protocol_stack", "Layers", "TCP/IP and OSI stacks are the textbook layered systems.",
     "Network protocol stack for an embedded controller",
     "The firmware implements a network protocol stack for an embedded controller: a driver for the hardware, a link "
     "level, a network level with routing, a transport level with reliable delivery and an application level. Each "
     "level should use only the services of the level below so that the hardware driver can be replaced for new boards "
     "and levels can be tested independently.",
     "control-dominant/embedded",
     [
         uc("UC1", "Send message", "Send an application message reliably to another device",
            "Application", "The link is up", "The message is delivered and acknowledged",
            "Each level may use only the level directly below",
            "The application passes the message down; each level adds its header and hands it to the level below until the driver transmits it."),
         uc("UC2", "Port to new board", "Replace the hardware driver for a new board", "Firmware engineer",
            "The new driver implements the driver interface", "The upper levels work unchanged",
            "Upper levels must not depend on the hardware",
            "The engineer writes the driver, links it below the link level, and runs the existing tests."),
     ],
     ["portability", "reliability"])

case("plugin_code_editor", "Microkernel", "Eclipse and VS Code keep a small core and load everything else as plugins.",
     "Extensible code editor for developers",
     "A code editor with a small core for buffers and windows, where support for languages, debuggers, version control "
     "and themes is added as plugins. The editor runs on several operating systems, and third parties write plugins "
     "against a stable interface without changing the core.",
     "data-dominant/development-environment-tool",
     [
         uc("UC1", "Install plugin", "Add a language plugin to the editor", "Developer",
            "The plugin is published", "The editor supports the new language",
            "Plugins must not modify the core",
            "The developer searches for the plugin, installs it, and the core loads it at start."),
         uc("UC2", "Write plugin", "Create a plugin against the extension interface", "Plugin author",
            "The extension interface is documented", "The plugin works on every supported platform",
            "The interface must stay compatible across versions",
            "The author implements the interface, packages the plugin, and publishes it."),
     ],
     ["portability", "maintainability"])

case("stock_ticker_app", "MVC", "Mobile apps on iOS and Android follow MVC or its presenter variants.",
     "Stock ticker mobile app",
     "A mobile app that shows live stock prices in a list, a detail screen with a chart and a home screen widget. The "
     "same quote data is displayed in several screens that must update as soon as a price changes. Users tap to add "
     "stocks to a watch list and set alerts.",
     "data-dominant/mobile-app",
     [
         uc("UC1", "Watch prices", "Display live prices in the list, chart and widget", "User",
            "The user has a watch list", "All screens show the latest price",
            "Screens must update immediately when data changes",
            "The app receives a quote, updates the data, and every screen showing the stock refreshes."),
         uc("UC2", "Add stock", "Add a stock to the watch list", "User", "The app is open",
            "The stock appears in the list", "The interface must be simple",
            "The user taps search, selects a stock, and the list screen shows it."),
     ],
     [{"name": "usability", "priority": 1}, {"name": "performance", "priority": 2}])

case("air_traffic_console", "PAC", "Hierarchical agent consoles in traffic and network monitoring.",
     "Air traffic monitoring console built from cooperating agents",
     "The console shows several sectors, each handled by an interactive agent with its own display, state and "
     "control. Sector agents are coordinated by intermediate agents for regions and a top agent holding the global "
     "picture. Agents must be replaceable and may run on different workstations.",
     "control-dominant/process-control",
     [
         uc("UC1", "Monitor sector", "Show aircraft in a sector and warn about conflicts", "Controller",
            "The sector agent is running", "Conflicts are highlighted", "Each agent keeps its own state",
            "The sector agent receives radar data, updates its state and display, and informs the region agent."),
         uc("UC2", "Hand over flight", "Move a flight from one sector agent to another", "Controller",
            "The flight is near the border", "The next sector agent owns the flight",
            "Agents communicate only through their control parts",
            "The controller confirms the hand over; the region agent coordinates both sector agents."),
     ],
     ["reliability", "usability"])

case("audio_effects_chain", "Pipes-and-Filters", "Audio and signal processing toolkits such as GStreamer.",
     "Audio effects processor for live sound",
     "The processor takes an audio stream from an input device, applies a chain of effects such as equalizer, "
     "compressor and reverb, and sends the result to the output. Musicians reorder and exchange effects freely, and the "
     "stream must be processed incrementally with low delay.",
     "computation-dominant/signal-processing",
     [
         uc("UC1", "Process stream", "Apply a chain of effects to the incoming audio stream", "Musician",
            "Input and output devices are connected", "The processed audio is played",
            "Processing must be incremental and avoid storing intermediate results",
            "Each effect reads a block of samples, transforms it, and passes it to the next effect until the output plays it."),
         uc("UC2", "Reorder effects", "Exchange or reorder effects in the chain", "Musician",
            "The chain is defined", "The new chain is active", "Effects must not share state",
            "The musician drags an effect to a new position and the processor reconnects the chain."),
     ],
     [{"name": "performance", "priority": 1}, {"name": "usability", "priority": 2}])


def main():
    (ROOT / "specs").mkdir(parents=True, exist_ok=True)
    (ROOT / "eval").mkdir(parents=True, exist_ok=True)
    for i, (slug, expected, notes, spec) in enumerate(CASES, 1):
        (ROOT / "specs" / f"{slug}.json").write_text(json.dumps(spec, indent=2) + "\n")
        doc = {"name": slug, "expected_pattern": expected, "notes": notes, "spec": spec}
        (ROOT / "eval" / f"{i:02d}_{slug}.json").write_text(json.dumps(doc, indent=2) + "\n")


if __name__ == "__main__":
    main()
