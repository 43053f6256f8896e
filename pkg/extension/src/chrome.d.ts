// Minimal ambient typings for the chrome extension APIs this package
// actually touches (promise forms, Manifest V3). Narrower than
// @types/chrome on purpose: anything not declared here is a compile
// error, which keeps the glue code's API surface auditable.

declare namespace chrome {
  namespace storage {
    interface StorageArea {
      get(defaults: Record<string, unknown>): Promise<Record<string, unknown>>;
      set(items: Record<string, unknown>): Promise<void>;
    }
    const sync: StorageArea;
    const local: StorageArea;
  }

  namespace runtime {
    const lastError: { message?: string } | undefined;
    function sendMessage(message: unknown): Promise<unknown>;
    const onMessage: {
      addListener(
        callback: (
          message: unknown,
          sender: unknown,
          sendResponse: (response?: unknown) => void,
        ) => boolean | void,
      ): void;
    };
  }

  namespace tabs {
    interface Tab {
      id?: number;
      url?: string;
      windowId?: number;
    }
    function query(info: { active?: boolean; currentWindow?: boolean }): Promise<Tab[]>;
    function sendMessage(tabId: number, message: unknown): Promise<unknown>;
    const onUpdated: {
      addListener(
        callback: (tabId: number, changeInfo: { url?: string }, tab: Tab) => void,
      ): void;
    };
    const onRemoved: {
      addListener(callback: (tabId: number) => void): void;
    };
  }

  namespace action {
    function setBadgeText(details: { text: string; tabId?: number }): Promise<void>;
    function setBadgeBackgroundColor(details: {
      color: string;
      tabId?: number;
    }): Promise<void>;
  }
}
