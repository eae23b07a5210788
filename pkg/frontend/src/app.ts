/** Application wiring: setup form, session panel, graph panel, offline
 * banner.  Exported as a function over an existing document so the
 * end-to-end tests can drive the real DOM against a live server. */
import { ApiClient, ConnectionError } from "./api.js";
import { SessionController } from "./controller.js";
import { parseDot } from "./dot.js";
import { renderGraph } from "./graph.js";
import { renderSession, describeRejection, type SessionElements } from "./view.js";

export interface AppHandles {
  controller: SessionController;
  api: ApiClient;
  /** Re-render cycle finished (render + graph fetch); awaited in tests. */
  settled: () => Promise<void>;
}

function byId<T extends HTMLElement>(doc: Document, id: string): T {
  const el = doc.getElementById(id);
  if (!el) {
    throw new Error(`missing #${id}`);
  }
  return el as T;
}

export function initApp(doc: Document, api: ApiClient): AppHandles {
  const controller = new SessionController(api);
  const setup = byId<HTMLElement>(doc, "setup");
  const session = byId<HTMLElement>(doc, "session");
  const modelInput = byId<HTMLTextAreaElement>(doc, "model-json");
  const supervisorInput = byId<HTMLTextAreaElement>(doc, "supervisor-json");
  const setupError = byId<HTMLElement>(doc, "setup-error");
  const banner = byId<HTMLElement>(doc, "offline-banner");
  const message = byId<HTMLElement>(doc, "message");
  const graphSvg = byId<HTMLElement>(doc, "graph") as unknown as SVGSVGElement;

  const elements: SessionElements = {
    modeBadge: byId(doc, "mode-badge"),
    stateInfo: byId(doc, "state-info"),
    markedInfo: byId(doc, "marked-info"),
    allowedGroup: byId(doc, "allowed-group"),
    disabledGroup: byId(doc, "disabled-group"),
    preemptedGroup: byId(doc, "preempted-group"),
    historyList: byId(doc, "history"),
    undoButton: byId<HTMLButtonElement>(doc, "undo"),
    tooltip: message,
  };

  let pending: Promise<void> = Promise.resolve();

  async function refreshGraph(): Promise<void> {
    const view = controller.view;
    if (!view) {
      return;
    }
    try {
      const dot = await controller.api.graph(view.id);
      renderGraph(graphSvg, parseDot(dot), view.sup_state);
    } catch (error) {
      if (error instanceof ConnectionError) {
        controller.offline = true;
        banner.hidden = false;
      }
    }
  }

  function render(): void {
    banner.hidden = !controller.offline;
    if (!controller.view) {
      return;
    }
    setup.hidden = true;
    session.hidden = false;
    renderSession(elements, controller, (event) => {
      pending = fire(event);
    });
    pending = pending.then(refreshGraph);
  }

  async function fire(event: string): Promise<void> {
    const result = await controller.fire(event);
    if (!result.issued) {
      message.textContent = `${event}: ${result.reason}`;
    } else if (!result.ok) {
      const view = controller.view;
      message.textContent = view
        ? `${event}: ${describeRejection(view, result.errorKind)}`
        : result.message;
    } else {
      message.textContent = "";
    }
  }

  controller.onChange(render);

  byId<HTMLButtonElement>(doc, "start-session").addEventListener("click", () => {
    pending = (async () => {
      setupError.hidden = true;
      let model: unknown;
      let supervisor: unknown;
      try {
        model = JSON.parse(modelInput.value);
        supervisor = supervisorInput.value.trim()
          ? JSON.parse(supervisorInput.value)
          : undefined;
      } catch (error) {
        setupError.textContent = `invalid JSON: ${String(error)}`;
        setupError.hidden = false;
        return;
      }
      try {
        await controller.start(model, supervisor);
      } catch (error) {
        setupError.textContent = String(error);
        setupError.hidden = false;
      }
    })();
  });

  byId<HTMLButtonElement>(doc, "load-demo").addEventListener("click", () => {
    pending = (async () => {
      const [model, supervisor] = await Promise.all([
        fetch("demo/model.json").then((r) => r.text()),
        fetch("demo/supervisor.json").then((r) => r.text()),
      ]);
      modelInput.value = model;
      supervisorInput.value = supervisor;
    })();
  });

  elements.undoButton.addEventListener("click", () => {
    pending = controller.undo().then(() => undefined);
  });

  byId<HTMLButtonElement>(doc, "retry").addEventListener("click", () => {
    pending = controller.retry().then(() => undefined);
  });

  return {
    controller,
    api,
    settled: async () => {
      // two rounds: a fire may queue a graph refresh behind it
      await pending;
      await pending;
    },
  };
}
