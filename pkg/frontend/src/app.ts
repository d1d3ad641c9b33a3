// DOM wiring: structured pickers on the left, English context with critical
// highlighting in the middle, answer panel on the right.

import { PlaygroundController } from "./controller.js";
import { vocabulary } from "./formal.js";
import { answerView, sentenceViews } from "./view.js";
import {
  AtomSpec,
  FactItem,
  RuleItem,
  ServiceApi,
  VARIABLE_SYNONYMS,
} from "./types.js";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function option(value: string): HTMLOptionElement {
  const node = document.createElement("option");
  node.value = value;
  node.textContent = value;
  return node;
}

function atomText(atom: AtomSpec): string {
  const not = atom.positive ? "" : "not ";
  return atom.predicate === "is"
    ? `${atom.subject} is ${not}${atom.object}`
    : `${atom.subject} ${not}${atom.predicate} ${atom.object}`;
}

export function mountApp(root: HTMLElement, api: ServiceApi): PlaygroundController {
  const controller = new PlaygroundController(api);

  root.innerHTML = "";
  const header = el("header");
  header.append(el("h1", "", "Rule reasoning playground"));
  const presetSelect = el("select", "presets");
  presetSelect.append(option("presets..."));
  const undoButton = el("button", "", "Undo");
  header.append(presetSelect, undoButton);

  const main = el("main");
  const editor = el("section", "editor");
  editor.append(el("h2", "", "Theory"));
  const itemList = el("div", "items");
  editor.append(itemList);

  const builders = el("div", "builders");
  editor.append(builders);

  const contextPanel = el("section", "context");
  contextPanel.append(el("h2", "", "Context"));
  const sentencesNode = el("div", "sentences");
  contextPanel.append(sentencesNode);
  const legend = el("p", "legend");
  legend.append(
    el("span", "chip critical", "critical"),
    el("span", "chip irrelevant", "irrelevant"),
  );
  contextPanel.append(legend);

  const answerPanel = el("section", "answer");
  answerPanel.append(el("h2", "", "Question"));
  const questionRow = el("div", "question-row");
  answerPanel.append(questionRow);
  const verdictNode = el("div", "verdict");
  const statusNode = el("p", "status");
  const proofNode = el("pre", "proof");
  const errorNode = el("div", "errors");
  answerPanel.append(verdictNode, statusNode, proofNode, errorNode);

  main.append(editor, contextPanel, answerPanel);
  root.append(header, main);

  // --- builders: one row of pickers for facts, a grower for rules ---------

  function atomPicker(allowVariables: boolean): {
    node: HTMLElement;
    read: () => AtomSpec;
    refresh: () => void;
  } {
    const subject = el("select");
    const predicate = el("select");
    const object = el("select");
    const polarity = el("select");
    polarity.append(option("+"), option("-"));
    const node = el("span", "picker");
    node.append(subject, predicate, object, polarity);

    function refresh() {
      const vocab = vocabulary(controller.state.items);
      const entities = vocab.entities.length ? vocab.entities : ["alice"];
      const attributes = vocab.attributes.length ? vocab.attributes : ["kind"];
      const relations = vocab.relations;
      const keep = (select: HTMLSelectElement, values: string[]) => {
        const previous = select.value;
        select.innerHTML = "";
        values.forEach((value) => select.append(option(value)));
        if (values.includes(previous)) select.value = previous;
      };
      keep(
        subject,
        allowVariables ? [...VARIABLE_SYNONYMS, ...entities] : entities,
      );
      keep(predicate, ["is", ...relations, "likes"]);
      const relational = predicate.value !== "is";
      keep(object, relational ? entities : attributes);
    }
    predicate.addEventListener("change", refresh);
    return {
      node,
      refresh,
      read: () => ({
        subject: subject.value,
        predicate: predicate.value,
        object: object.value,
        positive: polarity.value === "+",
      }),
    };
  }

  const factPicker = atomPicker(false);
  const addFact = el("button", "", "Add fact");
  const factRow = el("div", "builder");
  factRow.append(el("span", "", "fact:"), factPicker.node, addFact);

  const rulePickers = [atomPicker(true), atomPicker(true)];
  const conclusionPicker = atomPicker(true);
  const addRule = el("button", "", "Add rule");
  const ruleRow = el("div", "builder");
  ruleRow.append(
    el("span", "", "if"),
    rulePickers[0].node,
    el("span", "", "and (optional)"),
    rulePickers[1].node,
    el("span", "", "then"),
    conclusionPicker.node,
    addRule,
  );
  builders.append(factRow, ruleRow);

  const questionPicker = atomPicker(false);
  const askButton = el("button", "", "Ask");
  questionRow.append(questionPicker.node, askButton);

  addFact.addEventListener("click", () => {
    const item: FactItem = {
      kind: "fact",
      id: controller.freshId(),
      enabled: true,
      atom: factPicker.read(),
    };
    controller.edit({ type: "add", item });
  });

  addRule.addEventListener("click", () => {
    const first = rulePickers[0].read();
    const second = rulePickers[1].read();
    const conditions = [first];
    if (atomText(second) !== atomText(first)) conditions.push(second);
    const item: RuleItem = {
      kind: "rule",
      id: controller.freshId(),
      enabled: true,
      conditions,
      conclusion: conclusionPicker.read(),
    };
    controller.edit({ type: "add", item });
  });

  askButton.addEventListener("click", () => {
    controller.setQuestion(questionPicker.read());
    void controller.proveNow();
  });

  undoButton.addEventListener("click", () => controller.undo());

  // --- presets -------------------------------------------------------------

  void api.listCorpora().then((names) => {
    for (const name of names) {
      void api.corpus(name).then((detail) => {
        for (const corpusCase of detail.cases) {
          const entry = option(`${name}/${corpusCase.name}`);
          presetSelect.append(entry);
        }
      });
    }
  });

  presetSelect.addEventListener("change", () => {
    const [name, caseName] = presetSelect.value.split("/");
    if (!caseName) return;
    void api.corpus(name).then((detail) => {
      const corpusCase = detail.cases.find((c) => c.name === caseName);
      if (!corpusCase) return;
      controller.loadPreset(name, corpusCase);
      if (corpusCase.questions.length) {
        // preload the first golden question into the picker state
        const parsed = corpusCase.questions[0].statement;
        const match = parsed.match(/"([^"]*)"\s*"([^"]*)"\s*"([^"]*)"\s*"([+-])"/);
        if (match) {
          controller.setQuestion({
            subject: match[1],
            predicate: match[2],
            object: match[3],
            positive: match[4] === "+",
          });
        }
      }
    });
  });

  // --- rendering -----------------------------------------------------------

  function describeItem(id: number): string {
    const item = controller.state.items.find((candidate) => candidate.id === id);
    if (!item) return "";
    if (item.kind === "fact") return atomText(item.atom);
    const body = item.conditions.map(atomText).join(" and ");
    return `if ${body} then ${atomText(item.conclusion)}`;
  }

  function render() {
    const views = sentenceViews(controller.state);
    itemList.innerHTML = "";
    for (const view of views) {
      const row = el("div", view.enabled ? "item" : "item disabled");
      const toggle = el("input") as HTMLInputElement;
      toggle.type = "checkbox";
      toggle.checked = view.enabled;
      toggle.addEventListener("change", () =>
        controller.edit({ type: "toggle", id: view.itemId }),
      );
      const remove = el("button", "remove", "x");
      remove.addEventListener("click", () =>
        controller.edit({ type: "remove", id: view.itemId }),
      );
      row.append(
        toggle,
        el("span", "formal", describeItem(view.itemId)),
        el("span", "english", view.english ?? ""),
        remove,
      );
      itemList.append(row);
    }

    sentencesNode.innerHTML = "";
    for (const view of views) {
      if (!view.enabled || view.sentence === null) continue;
      const chip = el(
        "span",
        `sentence ${view.highlight}`,
        view.english ?? describeItem(view.itemId),
      );
      sentencesNode.append(chip, document.createTextNode(" "));
    }

    const answer = answerView(controller.state);
    verdictNode.textContent = answer.verdict ?? "?";
    verdictNode.className = `verdict ${answer.verdict ?? "unknown"}`;
    const depth = answer.depth !== null ? ` (depth ${answer.depth})` : "";
    statusNode.textContent = `${answer.status}${depth}`;
    proofNode.textContent = answer.proofs.length
      ? answer.proofs.join("\n")
      : "no proof";
    errorNode.innerHTML = "";
    if (answer.error) {
      errorNode.append(el("p", "error", answer.error));
      for (const violation of answer.violations) {
        errorNode.append(
          el("p", "error", `sentence ${violation.sentence}: ${violation.message}`),
        );
      }
    }
    undoButton.toggleAttribute("disabled", !controller.canUndo());
    factPicker.refresh();
    rulePickers.forEach((picker) => picker.refresh());
    conclusionPicker.refresh();
    questionPicker.refresh();
  }

  controller.onChange(render);
  render();
  return controller;
}
