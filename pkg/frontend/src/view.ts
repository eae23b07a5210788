/** DOM rendering of the session panel.  Pure functions of the controller
 * state; every click goes through the controller, which refuses anything
 * outside the clickable set without issuing a request. */
import type { SessionController } from "./controller.js";
import type { SessionView } from "./types.js";

export interface SessionElements {
  modeBadge: HTMLElement;
  stateInfo: HTMLElement;
  markedInfo: HTMLElement;
  allowedGroup: HTMLElement;
  disabledGroup: HTMLElement;
  preemptedGroup: HTMLElement;
  historyList: HTMLElement;
  undoButton: HTMLButtonElement;
  tooltip: HTMLElement;
}

function clear(el: HTMLElement): void {
  while (el.firstChild) {
    el.removeChild(el.firstChild);
  }
}

function eventButton(
  doc: Document,
  name: string,
  clickable: boolean,
  title: string | null,
): HTMLButtonElement {
  const button = doc.createElement("button");
  button.textContent = name;
  button.dataset["event"] = name;
  button.className = clickable ? "event clickable" : "event blocked";
  button.disabled = !clickable;
  if (title) {
    button.title = title;
  }
  return button;
}

export function renderSession(
  elements: SessionElements,
  controller: SessionController,
  onFire: (event: string) => void,
): void {
  const view = controller.view;
  if (!view) {
    return;
  }
  const doc = elements.modeBadge.ownerDocument;
  const clickable = new Set(controller.clickable);

  elements.modeBadge.textContent = view.decision.mode === "force" ? "FORCE" : "DISABLE";
  elements.modeBadge.className = `badge ${view.decision.mode}`;
  elements.stateInfo.textContent =
    view.plant_state === view.sup_state
      ? `state ${view.plant_state}`
      : `plant ${view.plant_state} / supervisor ${view.sup_state}`;
  elements.markedInfo.textContent = view.marked ? "marked" : "not marked";
  elements.markedInfo.className = view.marked ? "marked yes" : "marked no";

  clear(elements.allowedGroup);
  for (const name of view.decision.allowed) {
    const button = eventButton(
      doc,
      name,
      clickable.has(name),
      controller.refusalReason(name),
    );
    if (clickable.has(name)) {
      button.addEventListener("click", () => onFire(name));
    }
    elements.allowedGroup.appendChild(button);
  }
  clear(elements.disabledGroup);
  for (const name of view.decision.disabled) {
    elements.disabledGroup.appendChild(
      eventButton(doc, name, false, controller.refusalReason(name)),
    );
  }
  clear(elements.preemptedGroup);
  for (const name of view.decision.preempted) {
    elements.preemptedGroup.appendChild(
      eventButton(doc, name, false, controller.refusalReason(name)),
    );
  }

  clear(elements.historyList);
  view.history.forEach((event, index) => {
    const item = doc.createElement("li");
    item.textContent = `${index + 1}. ${event}`;
    elements.historyList.appendChild(item);
  });
  elements.undoButton.disabled = !view.can_undo;
}

export function describeRejection(view: SessionView, errorKind: string): string {
  if (errorKind === "disabled_by_supervisor") {
    return `the supervisor refused this event at ${view.sup_state}`;
  }
  if (errorKind === "not_eligible_in_plant") {
    return `the plant cannot execute this event at ${view.plant_state}`;
  }
  return errorKind;
}
