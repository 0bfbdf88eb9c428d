using System;
using ShopDemo.Business.Catalog;
using ShopDemo.Data.Entities;
using ShopDemo.Web.Common;

namespace ShopDemo.Web.Catalog
{
    public class CatalogPage : PageBase
    {
        private CatalogService catalog;

        public void LoadCatalog()
        {
            Product product = catalog.FetchProduct(1);
            string name = product.Name;
            this.Trace("catalog loaded");
        }

        public void ShowCount()
        {
            int total = catalog.CountActive();
            this.Trace("count shown");
        }
    }
}
